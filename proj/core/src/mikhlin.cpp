#include "lpmult/mikhlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpmult {

cplx boundary_derivative(const AnalyticModel& m, double t) {
  const cplx z = std::polar(1.0, t);
  return cplx(0.0, 1.0) * z * eval_derivative(m, z);
}

cplx cauchy_derivative(const AnalyticModel& m, double t, double radius, std::size_t Q) {
  if (!(radius > 0.0)) throw std::invalid_argument("cauchy_derivative needs radius > 0");
  if (Q < 2) throw std::invalid_argument("cauchy_derivative needs Q >= 2");
  const cplx center = std::polar(1.0, t);
  const double clearance = singularity_distance(m, center);
  if (!(radius < clearance))
    throw SingularityError("Cauchy circle of radius " + std::to_string(radius) +
                           " reaches a singularity at distance " + std::to_string(clearance));
  // m'(c) = (1 / 2 pi i) \oint m(zeta) / (zeta - c)^2 dzeta
  //       = (1 / (Q r)) sum_k m(c + r w_k) conj(w_k),  w_k = e^{2 pi i k / Q}
  cplx s = 0.0;
  for (std::size_t k = 0; k < Q; ++k) {
    const cplx w = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(Q));
    s += eval(m, center + radius * w) * std::conj(w);
  }
  return s / (static_cast<double>(Q) * radius);
}

MikhlinReport mikhlin_constant(const AnalyticModel& m, const StarDomain& domain,
                               const MikhlinOptions& opts) {
  if (opts.grid < 1024) throw std::invalid_argument("mikhlin_constant needs grid >= 1024");
  const std::string why = boundedness_violation(m, domain);
  if (!why.empty()) throw UnboundedModelError("model not bounded on the domain: " + why);

  MikhlinReport rep;
  rep.grid = opts.grid;
  const auto pts = domain.set().points();
  for (std::size_t j = 0; j < opts.grid; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(opts.grid);
    bool guarded = false;
    for (const double s : pts) {
      const double d = std::abs(t - s);
      guarded = guarded || std::min(d, kTwoPi - d) < opts.guard_band;
    }
    if (guarded) continue;
    const double product = std::abs(boundary_derivative(m, t)) * chordal_dist(t, domain.set());
    rep.sup_product = std::max(rep.sup_product, product);
  }
  rep.sup_norm = sup_norm_estimate(m, domain, opts.sup_grid).value;
  rep.inscribed_constant = domain.inscribed_constant();
  rep.bound = rep.sup_norm / rep.inscribed_constant;
  rep.margin = rep.bound > 0.0 ? rep.sup_product / rep.bound : 0.0;
  return rep;
}

}  // namespace lpmult
