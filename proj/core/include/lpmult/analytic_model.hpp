#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lpmult/circle_geometry.hpp"

namespace lpmult {

/// Raised when a model is evaluated at (or too close to) one of its
/// singularities.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a model is not bounded and analytic on a requested region.
class UnboundedModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class AnalyticModel;

/// sum_k c_k z^k
struct Polynomial {
  std::vector<cplx> coeffs;
};

/// sum_k a_k / (w_k - z), every |w_k| > 1.
struct PoleSum {
  std::vector<cplx> poles;
  std::vector<cplx> weights;
};

/// prod_j (z - a_j) / (1 - conj(a_j) z), every |a_j| < 1.
struct BlaschkeFinite {
  std::vector<cplx> zeros;
};

/// exp((z + 1) / (z - 1))
struct SingularInner {};

struct Product {
  std::vector<AnalyticModel> factors;
};

/// sum_k weights_k * terms_k
struct Sum {
  std::vector<AnalyticModel> terms;
  std::vector<cplx> weights;
};

/// A closed-form analytic function on (a neighbourhood of) the unit disk.
class AnalyticModel {
 public:
  using Variant = std::variant<Polynomial, PoleSum, BlaschkeFinite, SingularInner, Product, Sum>;

  static AnalyticModel polynomial(std::vector<cplx> coeffs);
  static AnalyticModel pole_sum(std::vector<cplx> poles, std::vector<cplx> weights);
  static AnalyticModel blaschke(std::vector<cplx> zeros);
  static AnalyticModel singular_inner();
  static AnalyticModel product(std::vector<AnalyticModel> factors);
  static AnalyticModel sum(std::vector<AnalyticModel> terms, std::vector<cplx> weights);
  static AnalyticModel constant(cplx c) { return polynomial({c}); }

  const Variant& variant() const { return v_; }

  /// Short tag of the variant ("polynomial", "pole_sum", ...).
  std::string tag() const;

 private:
  explicit AnalyticModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

cplx eval(const AnalyticModel& m, cplx z);
cplx eval_derivative(const AnalyticModel& m, cplx z);

/// Points where the model fails to be analytic: poles of pole sums and
/// Blaschke factors, and z = 1 for the singular inner function.
std::vector<cplx> singularities(const AnalyticModel& m);

/// Distance from z to the nearest singularity (infinity for entire models).
double singularity_distance(const AnalyticModel& m, cplx z);

/// Radius of the largest open disk about 0 on which the model is analytic.
double analyticity_radius(const AnalyticModel& m);

struct UnitCircleRegion {};
struct VinogradovRegion {
  double r = 2.0;
  double alpha = 0.0;
};
using Region = std::variant<UnitCircleRegion, StarDomain, VinogradovRegion>;

/// Maximum of |m| over a boundary grid of the region; a lower estimate of the
/// true supremum by the maximum principle.
struct SupNormEstimate {
  double value = 0.0;
  std::size_t grid_size = 0;
  std::string region_tag;
};

inline constexpr std::size_t kDefaultSupGrid = 8192;

/// `grid` is the number of samples per boundary piece (the circle, each
/// triangle side, each Vinogradov ray/arc). Grids nest when `grid` doubles.
SupNormEstimate sup_norm_estimate(const AnalyticModel& m, const Region& region,
                                  std::size_t grid = kDefaultSupGrid);

inline constexpr double kDefaultPoleMargin = 1e-9;

/// True iff every singularity of m lies outside the closed domain, at least
/// `margin` away from it.
bool is_bounded_on(const AnalyticModel& m, const StarDomain& domain,
                   double margin = kDefaultPoleMargin);

/// Human-readable reason is_bounded_on failed, or empty when it holds.
std::string boundedness_violation(const AnalyticModel& m, const StarDomain& domain,
                                  double margin = kDefaultPoleMargin);

}  // namespace lpmult
