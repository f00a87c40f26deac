#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpmult/analytic_model.hpp"

namespace lpmult {

struct DftSource {
  double rho = 0.0;
  std::size_t grid = 0;  // M, a power of two
};

/// Taylor coefficients m^(0..N-1).
struct CoefficientSequence {
  std::vector<cplx> coeffs;
  std::optional<DftSource> dft;     // empty for exact (closed-form) sequences
  std::optional<double> alias_bound;  // present whenever dft is

  std::size_t size() const { return coeffs.size(); }
  bool exact() const { return !dft.has_value(); }
  std::string source_tag() const { return exact() ? "exact" : "dft"; }
};

/// Raised when a model has no closed-form expansion.
class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// True for polynomials, pole sums, and products/sums built from them.
bool has_exact_taylor(const AnalyticModel& m);

/// Closed-form coefficients: geometric series for poles, truncated
/// convolution for products.
CoefficientSequence taylor_exact(const AnalyticModel& m, std::size_t N);

/// Coefficients from an M-point transform of m on the circle |z| = rho.
///
/// alias_bound bounds |computed - true| for every n < N. It combines the
/// Cauchy estimate |m^(k)| <= max_{|z|=r}|m| r^{-k} (best r over a few radii
/// between rho and the analyticity radius, maxima sampled) summed over the
/// aliased indices n + jM, and a floating-point rounding allowance.
CoefficientSequence taylor_dft(const AnalyticModel& m, std::size_t N, double rho,
                               std::size_t M);

/// Predicted alias_bound for taylor_dft(m, N, rho, M) without running it.
double predicted_alias_bound(const AnalyticModel& m, std::size_t N, double rho, std::size_t M);

struct DftParameters {
  double rho = 0.0;
  std::size_t grid = 0;
};

inline constexpr double kDefaultAliasTarget = 1e-10;
inline constexpr std::size_t kMaxDftGrid = std::size_t{1} << 22;

/// Tries rho in {0.5, 0.75, 0.9, 0.95, 1 - c/N for c = 1, 2, 4, 8} below the
/// analyticity radius; for each, M is the smallest power of two >= 2N whose
/// predicted bound meets `target` (capped at kMaxDftGrid). Picks the smallest
/// such M, or the smallest bound when no radius meets the target.
DftParameters choose_dft_parameters(const AnalyticModel& m, std::size_t N,
                                    double target = kDefaultAliasTarget);

/// Exact when available, otherwise DFT with chosen parameters.
CoefficientSequence taylor_auto(const AnalyticModel& m, std::size_t N);

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Finite-sequence l^p norm, p in [1, inf]. Throws for p < 1.
double p_norm(std::span<const cplx> x, double p);
inline double p_norm(const CoefficientSequence& seq, double p) { return p_norm(seq.coeffs, p); }

}  // namespace lpmult
