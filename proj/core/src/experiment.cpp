#include "lpmult/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <thread>

#ifndef LPMULT_VERSION
#define LPMULT_VERSION "0.0.0"
#endif

namespace lpmult {

namespace {

constexpr int kMaxDyadicK = 40;
constexpr std::size_t kMaxN = std::size_t{1} << 16;

std::string idx(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

const std::map<std::string, ExperimentKind>& kind_table() {
  static const std::map<std::string, ExperimentKind> t{
      {"theorem_probe", ExperimentKind::theorem_probe},
      {"verbitskii_probe", ExperimentKind::verbitskii_probe},
      {"mikhlin_verify", ExperimentKind::mikhlin_verify},
      {"lp_constants", ExperimentKind::lp_constants},
      {"norm_table", ExperimentKind::norm_table},
  };
  return t;
}

double get_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

std::uint64_t get_count(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw ConfigError(field, "must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  throw ConfigError(field, "expected a nonnegative integer");
}

double get_positive(const json& j, const std::string& field) {
  const double v = get_real(j, field);
  if (!(v > 0.0)) throw ConfigError(field, "must be positive");
  return v;
}

double parse_p(const json& j, const std::string& field) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInfNorm;
    throw ConfigError(field, "expected a number >= 1 or \"inf\", got \"" + s + "\"");
  }
  const double p = get_real(j, field);
  if (!(p >= 1.0)) throw ConfigError(field, "p must be >= 1");
  return p;
}

void reject_unknown(const json& j, const std::string& prefix, std::initializer_list<const char*> keys) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
      throw ConfigError(prefix + key, "unknown field");
  }
}

SetSpec parse_set(const json& j) {
  if (!j.is_object()) throw ConfigError("set", "expected an object");
  SetSpec s;
  if (j.contains("generator")) {
    reject_unknown(j, "set.", {"generator", "K"});
    const json& g = j.at("generator");
    if (!g.is_string()) throw ConfigError("set.generator", "expected a string");
    s.generator = g.get<std::string>();
    if (s.generator != "dyadic_gap" && s.generator != "superlacunary")
      throw ConfigError("set.generator", "unknown generator '" + s.generator + "'");
    if (!j.contains("K")) throw ConfigError("set.K", "missing");
    const std::uint64_t K = get_count(j.at("K"), "set.K");
    const int kmax = s.generator == "dyadic_gap" ? kMaxDyadicK : kMaxSuperlacunaryK;
    if (K < 1 || K > static_cast<std::uint64_t>(kmax))
      throw ConfigError("set.K", "must lie in [1, " + std::to_string(kmax) + "]");
    s.K = static_cast<int>(K);
    return s;
  }
  reject_unknown(j, "set.", {"angles", "accumulation"});
  if (!j.contains("angles")) throw ConfigError("set", "needs either 'generator' or 'angles'");
  s.generator = "explicit";
  auto list = [&](const char* key, std::vector<double>& out) {
    const std::string field = std::string("set.") + key;
    const json& a = j.at(key);
    if (!a.is_array()) throw ConfigError(field, "expected an array of numbers");
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_real(a[i], idx(field, i)));
  };
  list("angles", s.angles);
  if (j.contains("accumulation")) list("accumulation", s.accumulation);
  try {
    (void)ClosedCircleSet::from_angles(s.angles, s.accumulation);
  } catch (const GeometryError& e) {
    throw ConfigError("set.angles", e.what());
  }
  return s;
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object()) throw ConfigError("model", "expected an object");
  if (j.contains("type") && j.at("type") == "auto_poles") {
    reject_unknown(j, "model.", {"type", "deltas"});
    AutoPoles ap;
    if (j.contains("deltas")) {
      const json& d = j.at("deltas");
      if (!d.is_array() || d.empty())
        throw ConfigError("model.deltas", "expected a nonempty array of numbers");
      ap.deltas.clear();
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double v = get_positive(d[i], idx("model.deltas", i));
        if (v > 1.0) throw ConfigError(idx("model.deltas", i), "must lie in (0, 1]");
        ap.deltas.push_back(v);
      }
    }
    return ap;
  }
  try {
    return model_from_json(j, "model");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon == std::string::npos) throw ConfigError("model", msg);
    throw ConfigError(msg.substr(0, colon), msg.substr(colon + 2));
  }
}

bool needs(ExperimentKind k, const char* what) {
  using K = ExperimentKind;
  const std::string w = what;
  if (w == "set") return k == K::theorem_probe || k == K::mikhlin_verify || k == K::lp_constants;
  if (w == "theta0") return k == K::theorem_probe || k == K::mikhlin_verify;
  if (w == "p_list" || w == "N_list") return k != K::mikhlin_verify;
  return false;
}

bool allows_model(ExperimentKind k) {
  using K = ExperimentKind;
  return k == K::theorem_probe || k == K::mikhlin_verify || k == K::norm_table;
}

void parse_grid(const json& g, ExperimentConfig& cfg) {
  if (!g.is_object()) throw ConfigError("grid", "expected an object");
  reject_unknown(g, "grid.", {"mikhlin", "sup"});
  if (g.contains("mikhlin")) {
    cfg.mikhlin_grid = get_count(g.at("mikhlin"), "grid.mikhlin");
    if (cfg.mikhlin_grid < 1024 || cfg.mikhlin_grid > (std::size_t{1} << 22))
      throw ConfigError("grid.mikhlin", "must lie in [1024, 4194304]");
  }
  if (g.contains("sup")) {
    cfg.sup_grid = get_count(g.at("sup"), "grid.sup");
    if (cfg.sup_grid < 16 || cfg.sup_grid > (std::size_t{1} << 22))
      throw ConfigError("grid.sup", "must lie in [16, 4194304]");
  }
}

void parse_tolerances(const json& t, ExperimentConfig& cfg) {
  if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
  reject_unknown(t, "tolerances.", {"boyd", "boyd_max_iter", "boyd_restarts", "norm2"});
  if (t.contains("boyd")) {
    cfg.boyd_tol = get_positive(t.at("boyd"), "tolerances.boyd");
    if (cfg.boyd_tol >= 1.0) throw ConfigError("tolerances.boyd", "must be < 1");
  }
  if (t.contains("norm2")) {
    cfg.norm2_tol = get_positive(t.at("norm2"), "tolerances.norm2");
    if (cfg.norm2_tol >= 1.0) throw ConfigError("tolerances.norm2", "must be < 1");
  }
  if (t.contains("boyd_max_iter")) {
    const auto v = get_count(t.at("boyd_max_iter"), "tolerances.boyd_max_iter");
    if (v < 1 || v > 100000) throw ConfigError("tolerances.boyd_max_iter", "must lie in [1, 100000]");
    cfg.boyd_max_iter = static_cast<int>(v);
  }
  if (t.contains("boyd_restarts")) {
    const auto v = get_count(t.at("boyd_restarts"), "tolerances.boyd_restarts");
    if (v < 1 || v > 1000) throw ConfigError("tolerances.boyd_restarts", "must lie in [1, 1000]");
    cfg.boyd_restarts = static_cast<int>(v);
  }
}

// Checks that need the resolved set/model: domain construction, boundedness
// of the chosen model and partition cuts. All cheap compared to a run.
void validate_resolved(const ExperimentConfig& cfg) {
  if (!cfg.set) return;
  const ClosedCircleSet set = resolve_set(*cfg.set);
  if (cfg.kind == ExperimentKind::lp_constants) {
    for (std::size_t i = 0; i < cfg.N_list.size(); ++i) {
      try {
        (void)partition_from_set(set, cfg.N_list[i]);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(idx("N_list", i), e.what());
      }
    }
  }
  if (!cfg.theta0) return;
  try {
    (void)build_star_domain(set, *cfg.theta0);
  } catch (const GeometryError& e) {
    throw ConfigError("theta0", e.what());
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, k] : kind_table())
    if (k == kind) return name;
  return "unknown";
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  reject_unknown(j, "", {"schema_version", "kind", "set", "theta0", "model", "p_list", "N_list",
                         "grid", "trials", "seed", "tolerances", "comment"});
  ExperimentConfig cfg;

  if (!j.contains("schema_version")) throw ConfigError("schema_version", "missing");
  const std::uint64_t ver = get_count(j.at("schema_version"), "schema_version");
  if (ver != static_cast<std::uint64_t>(kConfigSchemaVersion))
    throw ConfigError("schema_version", "unsupported version " + std::to_string(ver) +
                                            " (expected " + std::to_string(kConfigSchemaVersion) + ")");

  if (!j.contains("kind")) throw ConfigError("kind", "missing");
  if (!j.at("kind").is_string()) throw ConfigError("kind", "expected a string");
  const auto it = kind_table().find(j.at("kind").get<std::string>());
  if (it == kind_table().end())
    throw ConfigError("kind", "unknown kind '" + j.at("kind").get<std::string>() + "'");
  cfg.kind = it->second;

  if (j.contains("comment") && !j.at("comment").is_string())
    throw ConfigError("comment", "expected a string");

  for (const char* key : {"set", "theta0", "p_list", "N_list"}) {
    if (needs(cfg.kind, key) && !j.contains(key))
      throw ConfigError(key, "required for kind " + to_string(cfg.kind));
  }

  if (j.contains("set")) cfg.set = parse_set(j.at("set"));
  if (j.contains("theta0")) {
    const double t = get_real(j.at("theta0"), "theta0");
    if (!(t > 0.0 && t < 0.5 * kPi)) throw ConfigError("theta0", "must lie in (0, pi/2)");
    cfg.theta0 = t;
  }
  if (cfg.theta0 && !cfg.set) throw ConfigError("theta0", "given without a set");

  if (j.contains("model")) {
    if (!allows_model(cfg.kind))
      throw ConfigError("model", "not accepted by kind " + to_string(cfg.kind));
    cfg.model = parse_model(j.at("model"));
  } else if (cfg.kind == ExperimentKind::norm_table) {
    throw ConfigError("model", "required for kind norm_table");
  } else if (allows_model(cfg.kind)) {
    cfg.model = AutoPoles{};
  }
  if (cfg.model && std::holds_alternative<AutoPoles>(*cfg.model) && !cfg.set)
    throw ConfigError("model", "auto_poles needs a set");

  if (j.contains("p_list")) {
    const json& pl = j.at("p_list");
    if (!pl.is_array() || pl.empty()) throw ConfigError("p_list", "expected a nonempty array");
    for (std::size_t i = 0; i < pl.size(); ++i) {
      const double p = parse_p(pl[i], idx("p_list", i));
      if (cfg.kind == ExperimentKind::lp_constants && (p == 1.0 || std::isinf(p)))
        throw ConfigError(idx("p_list", i), "lp_constants needs 1 < p < inf");
      if (std::find(cfg.p_list.begin(), cfg.p_list.end(), p) != cfg.p_list.end())
        throw ConfigError(idx("p_list", i), "duplicate p");
      cfg.p_list.push_back(p);
    }
  }
  if (j.contains("N_list")) {
    const json& nl = j.at("N_list");
    if (!nl.is_array() || nl.empty()) throw ConfigError("N_list", "expected a nonempty array");
    for (std::size_t i = 0; i < nl.size(); ++i) {
      const std::uint64_t n = get_count(nl[i], idx("N_list", i));
      if (n < 1 || n > kMaxN)
        throw ConfigError(idx("N_list", i), "must lie in [1, " + std::to_string(kMaxN) + "]");
      if (!cfg.N_list.empty() && n <= cfg.N_list.back())
        throw ConfigError(idx("N_list", i), "N_list must be strictly increasing");
      cfg.N_list.push_back(static_cast<std::size_t>(n));
    }
  }
  if (j.contains("grid")) parse_grid(j.at("grid"), cfg);
  if (j.contains("trials")) {
    cfg.trials = get_count(j.at("trials"), "trials");
    if (cfg.trials < 100 || cfg.trials > 1000000)
      throw ConfigError("trials", "must lie in [100, 1000000]");
  }
  if (j.contains("seed")) cfg.seed = get_count(j.at("seed"), "seed");
  if (j.contains("tolerances")) parse_tolerances(j.at("tolerances"), cfg);

  validate_resolved(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<root>", "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  j["kind"] = to_string(cfg.kind);
  if (cfg.set) {
    if (cfg.set->generator == "explicit")
      j["set"] = {{"angles", cfg.set->angles}, {"accumulation", cfg.set->accumulation}};
    else
      j["set"] = {{"generator", cfg.set->generator}, {"K", cfg.set->K}};
  }
  if (cfg.theta0) j["theta0"] = *cfg.theta0;
  if (cfg.model) {
    if (const auto* ap = std::get_if<AutoPoles>(&*cfg.model))
      j["model"] = {{"type", "auto_poles"}, {"deltas", ap->deltas}};
    else
      j["model"] = model_to_json(std::get<AnalyticModel>(*cfg.model));
  }
  json pl = json::array();
  for (const double p : cfg.p_list) pl.push_back(std::isinf(p) ? json("inf") : json(p));
  j["p_list"] = pl;
  j["N_list"] = cfg.N_list;
  j["grid"] = {{"mikhlin", cfg.mikhlin_grid}, {"sup", cfg.sup_grid}};
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"boyd", cfg.boyd_tol},
                     {"boyd_max_iter", cfg.boyd_max_iter},
                     {"boyd_restarts", cfg.boyd_restarts},
                     {"norm2", cfg.norm2_tol}};
  return j;
}

ClosedCircleSet resolve_set(const SetSpec& spec) {
  if (spec.generator == "dyadic_gap") return generate_dyadic_gap(spec.K);
  if (spec.generator == "superlacunary") return generate_superlacunary(spec.K);
  return ClosedCircleSet::from_angles(spec.angles, spec.accumulation);
}

AnalyticModel auto_pole_model(const ClosedCircleSet& set, const AutoPoles& spec) {
  std::vector<double> at = set.accumulation_points();
  if (at.empty()) at.assign(set.points().begin(), set.points().end());
  std::vector<cplx> poles;
  std::vector<cplx> weights;
  for (const double s : at) {
    for (const double d : spec.deltas) {
      poles.push_back(std::polar(1.0 + d, s));
      weights.push_back(d);
    }
  }
  return AnalyticModel::pole_sum(std::move(poles), std::move(weights));
}

std::string cell_kind(const CellResult& cell) {
  switch (cell.index()) {
    case 0: return "norm";
    case 1: return "mikhlin";
    default: return "lp_constants";
  }
}

std::string artifact_version() { return LPMULT_VERSION; }

std::string platform_note() {
  std::string os =
#if defined(__linux__)
      "linux";
#elif defined(__APPLE__)
      "macos";
#elif defined(_WIN32)
      "windows";
#else
      "unknown-os";
#endif
  std::string arch =
#if defined(__x86_64__) || defined(_M_X64)
      "x86_64";
#elif defined(__aarch64__)
      "aarch64";
#else
      "unknown-arch";
#endif
  std::string compiler =
#if defined(__clang__)
      "clang " __clang_version__;
#elif defined(__GNUC__)
      "gcc " __VERSION__;
#else
      "unknown-compiler";
#endif
  return os + " " + arch + " " + compiler;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

AnalyticModel resolve_model(const ExperimentConfig& cfg) {
  if (cfg.kind == ExperimentKind::verbitskii_probe) return AnalyticModel::singular_inner();
  const ModelSpec& spec = *cfg.model;
  if (const auto* ap = std::get_if<AutoPoles>(&spec)) return auto_pole_model(resolve_set(*cfg.set), *ap);
  return std::get<AnalyticModel>(spec);
}

EstimateOptions estimate_options(const ExperimentConfig& cfg) {
  EstimateOptions o;
  o.boyd.tol = cfg.boyd_tol;
  o.boyd.max_iter = cfg.boyd_max_iter;
  o.boyd.restarts = cfg.boyd_restarts;
  o.norm2.tol = cfg.norm2_tol;
  o.seed = cfg.seed;
  return o;
}

// Runs job(i) for i in [0, n) on at most `workers` threads; results land in
// slot i so the output order does not depend on scheduling.
template <class R, class Job>
std::vector<R> run_pool(std::size_t n, unsigned workers, Job job) {
  std::vector<R> out(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = job(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futs;
  for (unsigned w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = job(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

void notify(const RunHooks& hooks, CellTiming t) {
  if (hooks.on_cell) hooks.on_cell(t);
}

std::vector<CellResult> norm_cells(const AnalyticModel& m, const ExperimentConfig& cfg,
                                   const RunHooks& hooks, json& summary) {
  const EstimateOptions opts = estimate_options(cfg);
  const CoefficientSequence symbol = taylor_auto(m, cfg.N_list.back());
  auto curves = run_pool<std::vector<NormEstimate>>(cfg.p_list.size(), hooks.workers, [&](std::size_t i) {
    const auto t0 = Clock::now();
    auto curve = multiplier_norm_curve(symbol, cfg.p_list[i], cfg.N_list, opts);
    notify(hooks, {"norm", cfg.p_list[i], cfg.N_list.back(), seconds_since(t0)});
    return curve;
  });

  std::vector<CellResult> cells;
  json per_p = json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& curve = curves[i];
    bool monotone = true;
    for (std::size_t k = 1; k < curve.size(); ++k)
      monotone = monotone && curve[k].lower >= curve[k - 1].lower - 1e-9;
    json row = {{"p", std::isinf(cfg.p_list[i]) ? json("inf") : json(cfg.p_list[i])},
                {"lower_nondecreasing", monotone},
                {"first_lower", curve.front().lower},
                {"last_lower", curve.back().lower}};
    if (curve.size() >= 2)
      row["last_over_penultimate"] = curve.back().lower / curve[curve.size() - 2].lower;
    per_p.push_back(row);
    for (const auto& e : curve) cells.emplace_back(e);
  }
  summary["curves"] = per_p;
  if (symbol.alias_bound) summary["alias_bound"] = *symbol.alias_bound;
  summary["taylor_source"] = symbol.source_tag();
  return cells;
}

MikhlinReport mikhlin_cell(const AnalyticModel& m, const StarDomain& domain,
                           const ExperimentConfig& cfg, const RunHooks& hooks) {
  const auto t0 = Clock::now();
  MikhlinOptions mo;
  mo.grid = cfg.mikhlin_grid;
  mo.sup_grid = cfg.sup_grid;
  MikhlinReport r = mikhlin_constant(m, domain, mo);
  notify(hooks, {"mikhlin", 0.0, cfg.mikhlin_grid, seconds_since(t0)});
  return r;
}

}  // namespace

Report run(const ExperimentConfig& cfg, const RunHooks& hooks) {
  Report rep;
  rep.config = config_to_json(cfg);
  rep.version = artifact_version();
  rep.platform = platform_note();
  json& summary = rep.summary;

  switch (cfg.kind) {
    case ExperimentKind::theorem_probe:
    case ExperimentKind::mikhlin_verify: {
      const ClosedCircleSet set = resolve_set(*cfg.set);
      const StarDomain domain = build_star_domain(set, *cfg.theta0);
      const AnalyticModel m = resolve_model(cfg);
      summary["model"] = model_to_json(m);
      summary["inscribed_constant"] = domain.inscribed_constant();
      const std::string why = boundedness_violation(m, domain);
      summary["bounded_on_domain"] = why.empty();
      if (!why.empty()) throw UnboundedModelError("model is not bounded on the domain: " + why);
      const MikhlinReport mr = mikhlin_cell(m, domain, cfg, hooks);
      summary["mikhlin_margin_ok"] = mr.margin <= 1.05;
      rep.cells.emplace_back(mr);
      if (cfg.kind == ExperimentKind::theorem_probe) {
        auto cells = norm_cells(m, cfg, hooks, summary);
        rep.cells.insert(rep.cells.end(), cells.begin(), cells.end());
      }
      break;
    }
    case ExperimentKind::verbitskii_probe:
    case ExperimentKind::norm_table: {
      const AnalyticModel m = resolve_model(cfg);
      summary["model"] = model_to_json(m);
      rep.cells = norm_cells(m, cfg, hooks, summary);
      break;
    }
    case ExperimentKind::lp_constants: {
      const ClosedCircleSet set = resolve_set(*cfg.set);
      struct Job {
        double p;
        std::size_t N;
      };
      std::vector<Job> jobs;
      for (const double p : cfg.p_list)
        for (const std::size_t N : cfg.N_list) jobs.push_back({p, N});
      auto reports = run_pool<LPConstantsReport>(jobs.size(), hooks.workers, [&](std::size_t i) {
        const auto t0 = Clock::now();
        const auto part = partition_from_set(set, jobs[i].N);
        auto r = lp_constants_estimate(part, jobs[i].p, cfg.trials, cfg.seed);
        notify(hooks, {"lp_constants", jobs[i].p, jobs[i].N, seconds_since(t0)});
        return r;
      });
      for (const auto& r : reports) rep.cells.emplace_back(r);
      break;
    }
  }
  return rep;
}

}  // namespace lpmult
