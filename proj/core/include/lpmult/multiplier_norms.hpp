#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpmult/taylor.hpp"

namespace lpmult {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// N x N lower-triangular Toeplitz section of multiplication by m on Taylor
/// coefficients: (T x)_n = sum_{k <= n} m^(n - k) x_k.
class ToeplitzTruncation {
 public:
  /// Uses the first N entries of `symbol`; throws if it is shorter than N.
  ToeplitzTruncation(std::span<const cplx> symbol, std::size_t N);
  ToeplitzTruncation(const CoefficientSequence& symbol, std::size_t N)
      : ToeplitzTruncation(std::span<const cplx>(symbol.coeffs), N) {}

  std::size_t dim() const { return symbol_.size(); }
  std::span<const cplx> symbol() const { return symbol_; }
  cplx entry(std::size_t row, std::size_t col) const {
    return row >= col ? symbol_[row - col] : cplx{};
  }

  std::vector<cplx> apply_direct(std::span<const cplx> x) const;
  std::vector<cplx> apply_fast(std::span<const cplx> x) const;
  /// Picks the direct product for small N and the FFT product otherwise.
  std::vector<cplx> apply(std::span<const cplx> x) const;

  std::vector<cplx> apply_adjoint_direct(std::span<const cplx> y) const;
  std::vector<cplx> apply_adjoint(std::span<const cplx> y) const;

 private:
  std::vector<cplx> symbol_;
  std::vector<cplx> symbol_hat_;  // FFT of the zero-padded symbol
};

inline constexpr std::size_t kDirectApplyLimit = 64;

/// p = 1: max column sum; p = inf: max row sum. Both equal the partial l^1
/// sum of the symbol; throws std::logic_error if the two disagree.
double norm_exact_1_inf(const ToeplitzTruncation& T, double p);

struct Norm2Options {
  double tol = 1e-10;
  std::size_t max_steps = 1000;
};

/// Largest singular value. Power iteration on T*T from a fixed start vector,
/// with Rayleigh-Ritz extraction over the span of the iterates (Lanczos with
/// full reorthogonalisation). Stops when the Ritz residual is below
/// tol * estimate. The result never exceeds the true norm.
double norm_2(const ToeplitzTruncation& T, const Norm2Options& opts = {});
inline double norm_2(const ToeplitzTruncation& T, double tol) {
  return norm_2(T, Norm2Options{tol});
}

struct BoydOptions {
  double tol = 1e-8;      // on ||x_{k+1} - x_k||_p
  int max_iter = 20000;   // per start
  int restarts = 8;
};

/// Steps every start takes before only the leading one is continued.
inline constexpr int kBoydExploreSteps = 64;
/// A run also stops when its best value gains at most tol (relative) over
/// this many steps.
inline constexpr int kBoydStallWindow = 512;

struct BoydResult {
  double value = 0.0;            // max over iterates of ||Tx||_p / ||x||_p
  std::vector<cplx> maximizer;   // the iterate achieving `value`, ||x||_p = 1
  int iterations = 0;            // total over all starts
  std::uint64_t seed = 0;
};

/// dual_p(v)_i = |v_i|^{p-1} v_i / |v_i|, 0 -> 0.
std::vector<cplx> dual_map(std::span<const cplx> v, double p);

/// Boyd's fixed-point iteration x <- normalise(dual_q(T* dual_p(T x))) from
/// the warm starts, then e_0, the all-ones vector and seeded Gaussian
/// vectors (restarts in total, excluding warm starts). Each start runs
/// kBoydExploreSteps steps; the best unfinished one then continues until the
/// iterate moves by at most tol, its value stalls, or max_iter steps are spent. Every returned value is
/// a certified lower bound for ||T||_{p -> p}. Warm starts shorter than N are
/// zero-padded.
BoydResult boyd_lower_bound(const ToeplitzTruncation& T, double p, std::uint64_t seed,
                            const BoydOptions& opts = {},
                            std::span<const std::vector<cplx>> warm_starts = {});

double norm_p_lower_boyd(const ToeplitzTruncation& T, double p, std::uint64_t seed,
                         double tol = 1e-8);

/// Riesz-Thorin bound from A1 = A_inf = norm_exact_1_inf and A2.
double interpolation_upper(double p, double a1, double a2);
double norm_p_upper_interpolate(const ToeplitzTruncation& T, double p);

/// Maps a maximiser for exponent p to a starting vector for the dual
/// exponent: J conj(dual_p(T x)), J the index reversal. Truncated lower
/// triangular Toeplitz matrices satisfy T^T = J T J, so this is a maximiser
/// of ||T||_q when x maximises ||T||_p.
std::vector<cplx> dual_exponent_start(const ToeplitzTruncation& T, std::span<const cplx> x,
                                      double p);

/// Bracket {lower, upper} for a truncated multiplier norm.
struct NormEstimate {
  double p = 2.0;
  std::size_t N = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
  int iterations = 0;
  std::uint64_t seed = 0;
};

struct EstimateOptions {
  BoydOptions boyd;
  Norm2Options norm2;
  std::uint64_t seed = 1;
};

/// Dual exponent p/(p-1); 1 <-> inf.
double dual_exponent(double p);

/// Bracket for ||T_N(m)||_{p->p} at each N in N_list (ascending). Taylor
/// coefficients are computed once at the largest N; Boyd maximisers are
/// carried from each N to the next, so lower bounds are nondecreasing in N.
std::vector<NormEstimate> multiplier_norm_curve(const CoefficientSequence& symbol, double p,
                                                std::span<const std::size_t> N_list,
                                                const EstimateOptions& opts = {});
std::vector<NormEstimate> multiplier_norm_curve(const AnalyticModel& m, double p,
                                                std::span<const std::size_t> N_list,
                                                const EstimateOptions& opts = {});

NormEstimate multiplier_norm_estimate(const AnalyticModel& m, double p, std::size_t N,
                                      const EstimateOptions& opts = {});

}  // namespace lpmult
