#pragma once

#include <cstddef>

#include "lpmult/analytic_model.hpp"
#include "lpmult/circle_geometry.hpp"

namespace lpmult {

/// Derivative bound check for the boundary function m*(t) = m(e^{it}).
///
///   sup_product = sup_t |(m*)'(t)| dist(e^{it}, F)
///   bound       = ||m||_{H^inf(Omega_F)} / c(Omega_F)
///   margin      = sup_product / bound
///
/// The Cauchy estimate on circles of radius c dist(e^{it}, F) inside the
/// domain gives margin <= 1 for exact quantities.
struct MikhlinReport {
  double sup_product = 0.0;
  double bound = 0.0;
  double sup_norm = 0.0;
  double inscribed_constant = 0.0;
  std::size_t grid = 0;
  double margin = 0.0;
};

/// (m*)'(t) = i e^{it} m'(e^{it})
cplx boundary_derivative(const AnalyticModel& m, double t);

/// m'(e^{it}) by the trapezoidal rule on Q nodes of the circle of the given
/// radius about e^{it}. Throws SingularityError unless the closed disk stays
/// clear of every singularity of m.
cplx cauchy_derivative(const AnalyticModel& m, double t, double radius, std::size_t Q);

inline constexpr double kGuardBand = 1e-9;

struct MikhlinOptions {
  std::size_t grid = 20000;       // >= 1024
  std::size_t sup_grid = kDefaultSupGrid;
  double guard_band = kGuardBand;
};

/// Throws UnboundedModelError when m is not bounded on the domain.
MikhlinReport mikhlin_constant(const AnalyticModel& m, const StarDomain& domain,
                               const MikhlinOptions& opts = {});

}  // namespace lpmult
