#include "lpmult/serialization.hpp"

#include <stdexcept>

namespace lpmult {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) bad(field + "." + key, "missing");
  return j.at(key);
}

double real_from_json(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<double>();
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad(field, "expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_list_to_json(std::span<const cplx> v) {
  json out = json::array();
  for (const cplx z : v) out.push_back(complex_to_json(z));
  return out;
}

std::vector<cplx> complex_list_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(complex_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json set_to_json(const ClosedCircleSet& set) {
  return {{"angles", std::vector<double>(set.points().begin(), set.points().end())},
          {"accumulation", set.accumulation_points()}};
}

ClosedCircleSet set_from_json(const json& j) {
  const json& a = require(j, "angles", "set");
  if (!a.is_array()) bad("set.angles", "expected an array of numbers");
  std::vector<double> angles;
  for (std::size_t i = 0; i < a.size(); ++i)
    angles.push_back(real_from_json(a[i], "set.angles[" + std::to_string(i) + "]"));
  std::vector<double> acc;
  if (j.contains("accumulation")) {
    const json& ac = j.at("accumulation");
    if (!ac.is_array()) bad("set.accumulation", "expected an array of numbers");
    for (std::size_t i = 0; i < ac.size(); ++i)
      acc.push_back(real_from_json(ac[i], "set.accumulation[" + std::to_string(i) + "]"));
  }
  try {
    return ClosedCircleSet::from_angles(std::move(angles), acc);
  } catch (const GeometryError& e) {
    bad("set.angles", e.what());
  }
}

json domain_to_json(const StarDomain& domain, bool with_inscribed) {
  json tris = json::array();
  for (const Triangle& t : domain.triangles()) {
    tris.push_back({{"arc_start", t.arc.start},
                    {"arc_length", t.arc.length},
                    {"base_angle", t.base_angle},
                    {"theta", t.theta()},
                    {"apex", complex_to_json(t.apex())}});
  }
  json out = {{"set", set_to_json(domain.set())},
              {"theta0", domain.theta0()},
              {"theta_min", domain.theta_min()},
              {"triangles", tris}};
  if (with_inscribed) out["inscribed_constant"] = domain.inscribed_constant();
  return out;
}

json model_to_json(const AnalyticModel& m) {
  return std::visit(
      overloaded{
          [](const Polynomial& p) {
            return json{{"type", "polynomial"}, {"coeffs", complex_list_to_json(p.coeffs)}};
          },
          [](const PoleSum& p) {
            return json{{"type", "pole_sum"},
                        {"poles", complex_list_to_json(p.poles)},
                        {"weights", complex_list_to_json(p.weights)}};
          },
          [](const BlaschkeFinite& b) {
            return json{{"type", "blaschke"}, {"zeros", complex_list_to_json(b.zeros)}};
          },
          [](const SingularInner&) { return json{{"type", "singular_inner"}}; },
          [](const Product& p) {
            json f = json::array();
            for (const auto& x : p.factors) f.push_back(model_to_json(x));
            return json{{"type", "product"}, {"factors", f}};
          },
          [](const Sum& s) {
            json t = json::array();
            for (const auto& x : s.terms) t.push_back(model_to_json(x));
            return json{{"type", "sum"}, {"terms", t}, {"weights", complex_list_to_json(s.weights)}};
          },
      },
      m.variant());
}

AnalyticModel model_from_json(const json& j, const std::string& field) {
  const json& type = require(j, "type", field);
  if (!type.is_string()) bad(field + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "polynomial")
      return AnalyticModel::polynomial(
          complex_list_from_json(require(j, "coeffs", field), field + ".coeffs"));
    if (t == "pole_sum") {
      auto poles = complex_list_from_json(require(j, "poles", field), field + ".poles");
      for (std::size_t i = 0; i < poles.size(); ++i)
        if (!(std::abs(poles[i]) > 1.0))
          bad(field + ".poles[" + std::to_string(i) + "]", "pole must lie outside the closed unit disk");
      return AnalyticModel::pole_sum(
          std::move(poles), complex_list_from_json(require(j, "weights", field), field + ".weights"));
    }
    if (t == "blaschke") {
      auto zeros = complex_list_from_json(require(j, "zeros", field), field + ".zeros");
      for (std::size_t i = 0; i < zeros.size(); ++i)
        if (!(std::abs(zeros[i]) < 1.0))
          bad(field + ".zeros[" + std::to_string(i) + "]", "zero must lie inside the open unit disk");
      return AnalyticModel::blaschke(std::move(zeros));
    }
    if (t == "singular_inner") return AnalyticModel::singular_inner();
    if (t == "product") {
      const json& f = require(j, "factors", field);
      if (!f.is_array()) bad(field + ".factors", "expected an array of models");
      std::vector<AnalyticModel> factors;
      for (std::size_t i = 0; i < f.size(); ++i)
        factors.push_back(model_from_json(f[i], field + ".factors[" + std::to_string(i) + "]"));
      return AnalyticModel::product(std::move(factors));
    }
    if (t == "sum") {
      const json& f = require(j, "terms", field);
      if (!f.is_array()) bad(field + ".terms", "expected an array of models");
      std::vector<AnalyticModel> terms;
      for (std::size_t i = 0; i < f.size(); ++i)
        terms.push_back(model_from_json(f[i], field + ".terms[" + std::to_string(i) + "]"));
      return AnalyticModel::sum(std::move(terms), complex_list_from_json(require(j, "weights", field),
                                                                         field + ".weights"));
    }
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind(field, 0) == 0) throw;
    bad(field, msg);
  }
  bad(field + ".type", "unknown model type '" + t + "'");
}

json ratio_report_to_json(const RatioReport& r) {
  return {{"lengths_desc", r.lengths_desc},
          {"ratios", r.ratios},
          {"tail_start", r.tail_start},
          {"tail_max_ratio", r.tail_max_ratio}};
}

json coefficients_to_json(const CoefficientSequence& seq) {
  json out = {{"N", seq.size()},
              {"source", seq.source_tag()},
              {"coeffs", complex_list_to_json(seq.coeffs)}};
  if (seq.dft) {
    out["rho"] = seq.dft->rho;
    out["M"] = seq.dft->grid;
  }
  out["alias_bound"] = seq.alias_bound ? json(*seq.alias_bound) : json(nullptr);
  return out;
}

json norm_estimate_to_json(const NormEstimate& e) {
  return {{"p", std::isinf(e.p) ? json("inf") : json(e.p)},
          {"N", e.N},
          {"lower", e.lower},
          {"upper", std::isinf(e.upper) ? json(nullptr) : json(e.upper)},
          {"methods", {{"lower", e.lower_method}, {"upper", e.upper_method}}},
          {"iterations", e.iterations},
          {"seed", e.seed}};
}

NormEstimate norm_estimate_from_json(const json& j) {
  NormEstimate e;
  const json& p = j.at("p");
  e.p = p.is_string() ? kInfNorm : p.get<double>();
  e.N = j.at("N").get<std::size_t>();
  e.lower = j.at("lower").get<double>();
  e.upper = j.at("upper").is_null() ? kInfNorm : j.at("upper").get<double>();
  e.lower_method = j.at("methods").at("lower").get<std::string>();
  e.upper_method = j.at("methods").at("upper").get<std::string>();
  e.iterations = j.at("iterations").get<int>();
  e.seed = j.at("seed").get<std::uint64_t>();
  return e;
}

json mikhlin_to_json(const MikhlinReport& r) {
  return {{"sup_product", r.sup_product},       {"bound", r.bound},
          {"sup_norm", r.sup_norm},             {"inscribed_constant", r.inscribed_constant},
          {"grid", r.grid},                     {"margin", r.margin}};
}

MikhlinReport mikhlin_from_json(const json& j) {
  MikhlinReport r;
  r.sup_product = j.at("sup_product").get<double>();
  r.bound = j.at("bound").get<double>();
  r.sup_norm = j.at("sup_norm").get<double>();
  r.inscribed_constant = j.at("inscribed_constant").get<double>();
  r.grid = j.at("grid").get<std::size_t>();
  r.margin = j.at("margin").get<double>();
  return r;
}

json lp_constants_to_json(const LPConstantsReport& r) {
  return {{"p", r.p},         {"N", r.N},
          {"trials", r.trials}, {"ratio_min", r.ratio_min},
          {"ratio_max", r.ratio_max}, {"seed", r.seed}};
}

LPConstantsReport lp_constants_from_json(const json& j) {
  LPConstantsReport r;
  r.p = j.at("p").get<double>();
  r.N = j.at("N").get<std::size_t>();
  r.trials = j.at("trials").get<std::size_t>();
  r.ratio_min = j.at("ratio_min").get<double>();
  r.ratio_max = j.at("ratio_max").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

}  // namespace lpmult
