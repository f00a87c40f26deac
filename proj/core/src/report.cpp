#include "lpmult/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lpmult {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(std::uint64_t v) { return std::to_string(v); }

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json cell_to_json(const CellResult& c) {
  json j = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NormEstimate>) return norm_estimate_to_json(v);
        else if constexpr (std::is_same_v<T, MikhlinReport>) return mikhlin_to_json(v);
        else return lp_constants_to_json(v);
      },
      c);
  j["kind"] = cell_kind(c);
  return j;
}

CellResult cell_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "norm") return norm_estimate_from_json(j);
  if (kind == "mikhlin") return mikhlin_from_json(j);
  if (kind == "lp_constants") return lp_constants_from_json(j);
  throw std::invalid_argument("unknown cell kind '" + kind + "'");
}

}  // namespace

json report_to_json(const Report& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
  return {{"version", r.version},
          {"platform", r.platform},
          {"config", r.config},
          {"summary", r.summary},
          {"cells", cells}};
}

Report report_from_json(const json& j) {
  Report r;
  r.version = j.at("version").get<std::string>();
  r.platform = j.at("platform").get<std::string>();
  r.config = j.at("config");
  r.summary = j.at("summary");
  for (const auto& c : j.at("cells")) r.cells.push_back(cell_from_json(c));
  return r;
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  out << kCsvHeader << "\r\n";
  for (const auto& c : r.cells) {
    std::vector<std::string> f(16);
    f[0] = cell_kind(c);
    if (const auto* e = std::get_if<NormEstimate>(&c)) {
      f[1] = num(e->p);
      f[2] = num(std::uint64_t{e->N});
      f[3] = num(e->lower);
      f[4] = num(e->upper);
      f[5] = e->lower_method;
      f[6] = e->upper_method;
      f[7] = std::to_string(e->iterations);
      f[8] = num(e->seed);
    } else if (const auto* m = std::get_if<MikhlinReport>(&c)) {
      f[9] = num(m->sup_product);
      f[10] = num(m->bound);
      f[11] = num(m->margin);
      f[12] = num(std::uint64_t{m->grid});
    } else {
      const auto& l = std::get<LPConstantsReport>(c);
      f[1] = num(l.p);
      f[2] = num(std::uint64_t{l.N});
      f[8] = num(l.seed);
      f[13] = num(std::uint64_t{l.trials});
      f[14] = num(l.ratio_min);
      f[15] = num(l.ratio_max);
    }
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << quote(f[i]);
    out << "\r\n";
  }
  return out.str();
}

std::string to_json_text(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

std::string to_svg(const Report& r) {
  constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
  std::map<double, std::vector<const NormEstimate*>> by_p;
  for (const auto& c : r.cells)
    if (const auto* e = std::get_if<NormEstimate>(&c)) by_p[e->p].push_back(e);

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string title =
      r.config.contains("kind") ? r.config.at("kind").get<std::string>() : std::string("report");
  s << "<text x=\"" << L << "\" y=\"24\" font-size=\"14\">" << title
    << ": norm bounds vs N</text>\n";
  if (by_p.empty()) {
    s << "<text x=\"" << L << "\" y=\"" << H / 2 << "\">no norm cells</text>\n</svg>\n";
    return s.str();
  }

  double nmin = 1e300, nmax = 0, ymin = 1e300, ymax = 0;
  for (const auto& [p, v] : by_p) {
    for (const auto* e : v) {
      nmin = std::min(nmin, double(e->N));
      nmax = std::max(nmax, double(e->N));
      ymin = std::min(ymin, e->lower);
      ymax = std::max(ymax, std::isfinite(e->upper) ? e->upper : e->lower);
    }
  }
  if (nmax <= nmin) nmax = nmin * 2;
  const double pad = std::max(1e-6, 0.05 * (ymax - ymin));
  ymin -= pad;
  ymax += pad;
  auto X = [&](double n) { return L + (std::log2(n) - std::log2(nmin)) / (std::log2(nmax) - std::log2(nmin)) * (W - L - R); };
  auto Y = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << (W - R + L) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">N (log scale)</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = ymin + (ymax - ymin) * k / 4.0;
    s << "<text x=\"" << L - 6 << "\" y=\"" << Y(y) + 4 << "\" text-anchor=\"end\">" << num(std::round(y * 1e4) / 1e4)
      << "</text>\n";
  }
  std::vector<double> ns;
  for (const auto& [p, v] : by_p)
    for (const auto* e : v) ns.push_back(double(e->N));
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (const double n : ns)
    s << "<text x=\"" << X(n) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << num(n) << "</text>\n";

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::size_t ci = 0;
  double legend_y = T + 10;
  for (const auto& [p, v] : by_p) {
    const char* col = colors[ci++ % 6];
    auto poly = [&](bool upper, const char* dash) {
      s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"" << dash << " points=\"";
      for (const auto* e : v) {
        const double y = upper ? e->upper : e->lower;
        if (std::isfinite(y)) s << X(double(e->N)) << "," << Y(y) << " ";
      }
      s << "\"/>\n";
    };
    poly(false, "");
    poly(true, " stroke-dasharray=\"5,3\"");
    const std::string label = std::isinf(p) ? "inf" : num(std::round(p * 1000) / 1000);
    s << "<text x=\"" << W - R + 10 << "\" y=\"" << legend_y << "\" fill=\"" << col << "\">p = " << label
      << "</text>\n";
    legend_y += 16;
  }
  s << "<text x=\"" << W - R + 10 << "\" y=\"" << legend_y + 8 << "\">solid: lower</text>\n";
  s << "<text x=\"" << W - R + 10 << "\" y=\"" << legend_y + 24 << "\">dashed: upper</text>\n";
  s << "</svg>\n";
  return s.str();
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "svg") return OutputFormat::svg;
  throw std::invalid_argument("unknown output format '" + s + "' (csv, json, svg)");
}

std::string extension(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::svg: return "svg";
  }
  return "txt";
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::filesystem::path emit(const Report& r, OutputFormat f, const std::filesystem::path& dir,
                           const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto path = dir / (stem + "." + extension(f));
  switch (f) {
    case OutputFormat::csv: write_text_file(path, to_csv(r)); break;
    case OutputFormat::json: write_text_file(path, to_json_text(r)); break;
    case OutputFormat::svg: write_text_file(path, to_svg(r)); break;
  }
  return path;
}

std::filesystem::path emit_timings(const std::vector<CellTiming>& timings,
                                   const std::filesystem::path& dir, const std::string& stem) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ostringstream out;
  out << "kind,p,N,seconds\r\n";
  for (const auto& t : timings)
    out << t.kind << "," << num(t.p) << "," << t.N << "," << num(t.seconds) << "\r\n";
  const auto path = dir / (stem + ".timings.csv");
  write_text_file(path, out.str());
  return path;
}

}  // namespace lpmult
