#include "lpmult/analytic_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lpmult {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_cplx(cplx z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Value and derivative together, so products need one pass.
struct Jet {
  cplx value;
  cplx deriv;
};

Jet eval_jet(const AnalyticModel& m, cplx z, bool want_deriv);

Jet poly_jet(const Polynomial& p, cplx z) {
  cplx v = 0.0, d = 0.0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

Jet pole_jet(const PoleSum& p, cplx z) {
  cplx v = 0.0, d = 0.0;
  for (std::size_t k = 0; k < p.poles.size(); ++k) {
    const cplx diff = p.poles[k] - z;
    if (diff == cplx(0.0, 0.0))
      throw SingularityError("pole sum evaluated at its pole " + fmt_cplx(p.poles[k]));
    v += p.weights[k] / diff;
    d += p.weights[k] / (diff * diff);
  }
  return {v, d};
}

Jet blaschke_jet(const BlaschkeFinite& b, cplx z) {
  cplx v = 1.0, d = 0.0;
  for (const cplx a : b.zeros) {
    const cplx den = 1.0 - std::conj(a) * z;
    if (den == cplx(0.0, 0.0))
      throw SingularityError("Blaschke factor evaluated at its pole");
    const cplx f = (z - a) / den;
    const cplx fd = (1.0 - std::norm(a)) / (den * den);
    d = d * f + v * fd;
    v *= f;
  }
  return {v, d};
}

Jet singular_jet(cplx z) {
  const cplx den = z - 1.0;
  if (den == cplx(0.0, 0.0))
    throw SingularityError("singular inner function evaluated at z = 1");
  const cplx v = std::exp((z + 1.0) / den);
  return {v, v * (-2.0) / (den * den)};
}

Jet eval_jet(const AnalyticModel& m, cplx z, bool want_deriv) {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) { return poly_jet(p, z); },
          [&](const PoleSum& p) { return pole_jet(p, z); },
          [&](const BlaschkeFinite& b) { return blaschke_jet(b, z); },
          [&](const SingularInner&) { return singular_jet(z); },
          [&](const Product& p) {
            Jet acc{1.0, 0.0};
            for (const auto& f : p.factors) {
              const Jet j = eval_jet(f, z, want_deriv);
              acc = {acc.value * j.value, acc.deriv * j.value + acc.value * j.deriv};
            }
            return acc;
          },
          [&](const Sum& s) {
            Jet acc{0.0, 0.0};
            for (std::size_t k = 0; k < s.terms.size(); ++k) {
              const Jet j = eval_jet(s.terms[k], z, want_deriv);
              acc.value += s.weights[k] * j.value;
              acc.deriv += s.weights[k] * j.deriv;
            }
            return acc;
          },
      },
      m.variant());
}

void collect_singularities(const AnalyticModel& m, std::vector<cplx>& out) {
  std::visit(overloaded{
                 [](const Polynomial&) {},
                 [&](const PoleSum& p) { out.insert(out.end(), p.poles.begin(), p.poles.end()); },
                 [&](const BlaschkeFinite& b) {
                   for (const cplx a : b.zeros)
                     if (a != cplx(0.0, 0.0)) out.push_back(1.0 / std::conj(a));
                 },
                 [&](const SingularInner&) { out.emplace_back(1.0, 0.0); },
                 [&](const Product& p) {
                   for (const auto& f : p.factors) collect_singularities(f, out);
                 },
                 [&](const Sum& s) {
                   for (const auto& t : s.terms) collect_singularities(t, out);
                 },
             },
             m.variant());
}

void check_finite(const std::vector<cplx>& v, const char* what) {
  for (const cplx z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument(std::string(what) + " contains a non-finite value");
}

}  // namespace

AnalyticModel AnalyticModel::polynomial(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  check_finite(coeffs, "polynomial coefficients");
  return AnalyticModel(Polynomial{std::move(coeffs)});
}

AnalyticModel AnalyticModel::pole_sum(std::vector<cplx> poles, std::vector<cplx> weights) {
  if (poles.size() != weights.size())
    throw std::invalid_argument("pole sum needs one weight per pole");
  check_finite(poles, "pole sum poles");
  check_finite(weights, "pole sum weights");
  for (const cplx w : poles)
    if (!(std::abs(w) > 1.0))
      throw std::invalid_argument("pole " + fmt_cplx(w) + " is not outside the closed disk");
  return AnalyticModel(PoleSum{std::move(poles), std::move(weights)});
}

AnalyticModel AnalyticModel::blaschke(std::vector<cplx> zeros) {
  check_finite(zeros, "Blaschke zeros");
  for (const cplx a : zeros)
    if (!(std::abs(a) < 1.0))
      throw std::invalid_argument("Blaschke zero " + fmt_cplx(a) + " is not inside the disk");
  return AnalyticModel(BlaschkeFinite{std::move(zeros)});
}

AnalyticModel AnalyticModel::singular_inner() { return AnalyticModel(SingularInner{}); }

AnalyticModel AnalyticModel::product(std::vector<AnalyticModel> factors) {
  if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
  return AnalyticModel(Product{std::move(factors)});
}

AnalyticModel AnalyticModel::sum(std::vector<AnalyticModel> terms, std::vector<cplx> weights) {
  if (terms.empty()) throw std::invalid_argument("sum needs at least one term");
  if (terms.size() != weights.size())
    throw std::invalid_argument("sum needs one weight per term");
  check_finite(weights, "sum weights");
  return AnalyticModel(Sum{std::move(terms), std::move(weights)});
}

std::string AnalyticModel::tag() const {
  return std::visit(overloaded{
                        [](const Polynomial&) { return std::string("polynomial"); },
                        [](const PoleSum&) { return std::string("pole_sum"); },
                        [](const BlaschkeFinite&) { return std::string("blaschke"); },
                        [](const SingularInner&) { return std::string("singular_inner"); },
                        [](const Product&) { return std::string("product"); },
                        [](const Sum&) { return std::string("sum"); },
                    },
                    v_);
}

cplx eval(const AnalyticModel& m, cplx z) { return eval_jet(m, z, false).value; }

cplx eval_derivative(const AnalyticModel& m, cplx z) { return eval_jet(m, z, true).deriv; }

std::vector<cplx> singularities(const AnalyticModel& m) {
  std::vector<cplx> out;
  collect_singularities(m, out);
  return out;
}

double singularity_distance(const AnalyticModel& m, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx w : singularities(m)) best = std::min(best, std::abs(w - z));
  return best;
}

double analyticity_radius(const AnalyticModel& m) { return singularity_distance(m, 0.0); }

std::string boundedness_violation(const AnalyticModel& m, const StarDomain& domain,
                                  double margin) {
  for (const cplx w : singularities(m)) {
    if (domain.contains(w)) return "singularity " + fmt_cplx(w) + " lies inside the domain";
    const double d = domain.boundary_distance(w);
    if (d < margin)
      return "singularity " + fmt_cplx(w) + " is within " + std::to_string(d) +
             " of the domain boundary (margin " + std::to_string(margin) + ")";
  }
  return {};
}

bool is_bounded_on(const AnalyticModel& m, const StarDomain& domain, double margin) {
  return boundedness_violation(m, domain, margin).empty();
}

namespace {

constexpr double kSkipRadius = 1e-14;

struct MaxTracker {
  const AnalyticModel& m;
  const std::vector<cplx>& sing;
  double best = 0.0;

  void visit(cplx z) {
    for (const cplx w : sing)
      if (std::abs(z - w) < kSkipRadius) return;
    best = std::max(best, std::abs(eval(m, z)));
  }
};

// Samples the segment [from, to] at i/grid, both uniformly and clustered
// toward `from` (cubic map), so the grid nests when `grid` doubles.
void sample_segment(MaxTracker& tr, cplx from, cplx to, std::size_t grid) {
  const double g = static_cast<double>(grid);
  for (std::size_t i = 0; i <= grid; ++i) {
    const double u = static_cast<double>(i) / g;
    tr.visit(from + u * (to - from));
    tr.visit(from + (u * u * u) * (to - from));
  }
}

}  // namespace

SupNormEstimate sup_norm_estimate(const AnalyticModel& m, const Region& region,
                                  std::size_t grid) {
  if (grid < 1) throw std::invalid_argument("sup_norm_estimate needs grid >= 1");
  const auto sing = singularities(m);
  MaxTracker tr{m, sing};
  SupNormEstimate est;
  est.grid_size = grid;

  std::visit(
      overloaded{
          [&](const UnitCircleRegion&) {
            for (const cplx w : sing)
              if (std::abs(w) < 1.0)
                throw UnboundedModelError("singularity " + fmt_cplx(w) + " inside the unit disk");
            for (std::size_t j = 0; j < grid; ++j)
              tr.visit(std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(grid)));
            est.region_tag = "unit_circle";
          },
          [&](const StarDomain& domain) {
            const std::string why = boundedness_violation(m, domain);
            if (!why.empty()) throw UnboundedModelError("model not in H^inf(domain): " + why);
            for (const Triangle& tri : domain.triangles()) {
              sample_segment(tr, tri.left(), tri.apex(), grid);
              sample_segment(tr, tri.right(), tri.apex(), grid);
            }
            est.region_tag = "star_domain";
          },
          [&](const VinogradovRegion& vr) {
            if (!(vr.r > 1.0) || !(vr.alpha >= 0.0 && vr.alpha < 0.5 * kPi))
              throw std::invalid_argument("Vinogradov region needs r > 1 and 0 <= alpha < pi/2");
            for (const cplx w : sing)
              if (vinogradov_contains(vr.r, vr.alpha, w))
                throw UnboundedModelError("singularity " + fmt_cplx(w) +
                                          " inside the Vinogradov domain");
            // Ray 1 + s e^{i alpha} meets |z| = r at s = -cos(alpha) + sqrt(r^2 - sin^2(alpha)).
            const double smax =
                -std::cos(vr.alpha) + std::sqrt(vr.r * vr.r - std::sin(vr.alpha) * std::sin(vr.alpha));
            for (const double sign : {1.0, -1.0}) {
              const cplx end = 1.0 + std::polar(smax, sign * vr.alpha);
              const double g = static_cast<double>(grid);
              for (std::size_t i = 1; i <= grid; ++i) {
                const double u = static_cast<double>(i) / g;
                tr.visit(1.0 + u * (end - 1.0));
                tr.visit(1.0 + (u * u * u) * (end - 1.0));
              }
            }
            const double a0 = std::arg(1.0 + std::polar(smax, vr.alpha));
            for (std::size_t j = 0; j <= grid; ++j) {
              const double t = a0 + (kTwoPi - 2.0 * a0) * static_cast<double>(j) / static_cast<double>(grid);
              tr.visit(std::polar(vr.r, t));
            }
            est.region_tag = "vinogradov";
          },
      },
      region);
  est.value = tr.best;
  return est;
}

}  // namespace lpmult
