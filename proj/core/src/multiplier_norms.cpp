#include "lpmult/multiplier_norms.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lpmult/fft.hpp"

namespace lpmult {

namespace {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const cplx> a) {
  double s = 0.0;
  for (const cplx v : a) s += std::norm(v);
  return std::sqrt(s);
}

std::vector<cplx> gaussian_vector(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& x : v) {
    const double re = nd(rng);
    x = {re, nd(rng)};
  }
  return v;
}

void scale(std::vector<cplx>& v, double s) {
  for (auto& x : v) x *= s;
}

std::string exponent_label(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", p);
  return buf;
}

}  // namespace

ToeplitzTruncation::ToeplitzTruncation(std::span<const cplx> symbol, std::size_t N) {
  if (N == 0) throw std::invalid_argument("Toeplitz truncation needs N >= 1");
  if (symbol.size() < N)
    throw std::invalid_argument("Toeplitz truncation N = " + std::to_string(N) +
                                " exceeds symbol length " + std::to_string(symbol.size()));
  symbol_.assign(symbol.begin(), symbol.begin() + static_cast<std::ptrdiff_t>(N));
  if (N > kDirectApplyLimit) {
    symbol_hat_.assign(next_power_of_two(2 * N), cplx{});
    std::copy(symbol_.begin(), symbol_.end(), symbol_hat_.begin());
    fft_inplace(symbol_hat_);
  }
}

std::vector<cplx> ToeplitzTruncation::apply_direct(std::span<const cplx> x) const {
  const std::size_t n = dim();
  if (x.size() != n) throw std::invalid_argument("Toeplitz apply: dimension mismatch");
  std::vector<cplx> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c <= r; ++c) s += symbol_[r - c] * x[c];
    y[r] = s;
  }
  return y;
}

std::vector<cplx> ToeplitzTruncation::apply_fast(std::span<const cplx> x) const {
  const std::size_t n = dim();
  if (x.size() != n) throw std::invalid_argument("Toeplitz apply: dimension mismatch");
  std::vector<cplx> hat = symbol_hat_;
  if (hat.empty()) {
    hat.assign(next_power_of_two(2 * n), cplx{});
    std::copy(symbol_.begin(), symbol_.end(), hat.begin());
    fft_inplace(hat);
  }
  std::vector<cplx> buf(hat.size());
  std::copy(x.begin(), x.end(), buf.begin());
  fft_inplace(buf);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= hat[i];
  buf = ifft(std::move(buf));
  buf.resize(n);
  return buf;
}

std::vector<cplx> ToeplitzTruncation::apply(std::span<const cplx> x) const {
  return dim() > kDirectApplyLimit ? apply_fast(x) : apply_direct(x);
}

std::vector<cplx> ToeplitzTruncation::apply_adjoint_direct(std::span<const cplx> y) const {
  const std::size_t n = dim();
  if (y.size() != n) throw std::invalid_argument("Toeplitz adjoint: dimension mismatch");
  std::vector<cplx> x(n);
  for (std::size_t c = 0; c < n; ++c) {
    cplx s = 0.0;
    for (std::size_t r = c; r < n; ++r) s += std::conj(symbol_[r - c]) * y[r];
    x[c] = s;
  }
  return x;
}

std::vector<cplx> ToeplitzTruncation::apply_adjoint(std::span<const cplx> y) const {
  const std::size_t n = dim();
  if (n <= kDirectApplyLimit) return apply_adjoint_direct(y);
  // T* = conj(J T J)
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::conj(y[n - 1 - i]);
  v = apply_fast(v);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::conj(v[n - 1 - i]);
  return out;
}

double norm_exact_1_inf(const ToeplitzTruncation& T, double p) {
  if (!(p == 1.0 || std::isinf(p)))
    throw std::invalid_argument("norm_exact_1_inf needs p = 1 or p = inf");
  const std::size_t n = T.dim();
  const auto sym = T.symbol();
  // Both sums run over ascending symbol index, so they agree bit for bit.
  double max_col = 0.0, max_row = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (std::size_t r = c; r < n; ++r) s += std::abs(sym[r - c]);
    max_col = std::max(max_col, s);
  }
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t c = r + 1; c-- > 0;) s += std::abs(sym[r - c]);
    max_row = std::max(max_row, s);
  }
  if (max_col != max_row)
    throw std::logic_error("max column sum and max row sum of a Toeplitz section differ");
  return max_col;
}

double norm_2(const ToeplitzTruncation& T, const Norm2Options& opts) {
  const std::size_t n = T.dim();
  std::vector<std::vector<cplx>> basis;
  std::vector<double> alpha, beta;

  std::vector<cplx> q = gaussian_vector(n, 0x5eedULL, 0);
  scale(q, 1.0 / norm2(q));
  const std::size_t steps = std::min(n, opts.max_steps);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  std::size_t next_check = 1;

  for (std::size_t j = 0;; ++j) {
    std::vector<cplx> w = T.apply_adjoint(T.apply(q));
    const double a = dot(q, w).real();
    for (std::size_t i = 0; i < n; ++i) {
      w[i] -= a * q[i];
      if (j > 0) w[i] -= beta.back() * basis.back()[i];
    }
    basis.push_back(q);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const cplx h = dot(b, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= h * b[i];
      }
    alpha.push_back(a);
    const double b = norm2(w);

    // The dense tridiagonal solve costs O(k^3); run it on a geometric schedule.
    const bool last = b <= 1e-300 || j + 1 == n || j + 1 >= steps;
    if (!last && j + 1 < next_check) {
      beta.push_back(b);
      q = std::move(w);
      scale(q, 1.0 / b);
      continue;
    }
    next_check = std::max(j + 2, (j + 1) * 9 / 8);

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub = k > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1))
                                : Eigen::VectorXd(0);
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = std::max(0.0, solver.eigenvalues()(k - 1));
    const double residual = b * std::abs(solver.eigenvectors()(k - 1, k - 1));

    if (residual <= opts.tol * theta || b <= 1e-300 || j + 1 == n) return std::sqrt(theta);
    if (j + 1 >= steps)
      throw ConvergenceError("norm_2: Ritz residual " + std::to_string(residual) +
                             " after " + std::to_string(steps) + " steps");
    beta.push_back(b);
    q = std::move(w);
    scale(q, 1.0 / b);
  }
}

std::vector<cplx> dual_map(std::span<const cplx> v, double p) {
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a == 0.0) continue;
    out[i] = (p == 2.0 ? 1.0 : std::pow(a, p - 2.0)) * v[i];
  }
  return out;
}

double dual_exponent(double p) {
  if (p == 1.0) return kInfNorm;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

BoydResult boyd_lower_bound(const ToeplitzTruncation& T, double p, std::uint64_t seed,
                            const BoydOptions& opts, std::span<const std::vector<cplx>> warm_starts) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("Boyd iteration needs p in (1, inf), got " + std::to_string(p));
  const std::size_t n = T.dim();
  const double q = dual_exponent(p);

  std::vector<std::vector<cplx>> starts;
  for (const auto& w : warm_starts) {
    std::vector<cplx> s(n);
    std::copy_n(w.begin(), std::min(n, w.size()), s.begin());
    if (norm2(s) > 0.0) starts.push_back(std::move(s));
  }
  const int restarts = std::max(opts.restarts, 1);
  for (int r = 0; r < restarts; ++r) {
    if (r == 0) {
      std::vector<cplx> e0(n);
      e0[0] = 1.0;
      starts.push_back(std::move(e0));
    } else if (r == 1) {
      starts.emplace_back(n, cplx{1.0, 0.0});
    } else {
      starts.push_back(gaussian_vector(n, seed, static_cast<std::uint64_t>(r)));
    }
  }

  BoydResult best;
  best.seed = seed;
  best.maximizer.assign(n, cplx{});
  struct Run {
    std::vector<cplx> x;
    double value = 0.0;
    double window_start = 0.0;
    int steps = 0;
    bool done = false;
  };
  // One Boyd step from run.x; records the value at run.x.
  auto step = [&](Run& run) {
    ++best.iterations;
    ++run.steps;
    const std::vector<cplx> y = T.apply(run.x);
    const double gamma = p_norm(y, p);
    run.value = std::max(run.value, gamma);
    if (gamma > best.value) {
      best.value = gamma;
      best.maximizer = run.x;
    }
    if (gamma == 0.0) {
      run.done = true;
      return;
    }
    std::vector<cplx> next = dual_map(T.apply_adjoint(dual_map(y, p)), q);
    const double nn = p_norm(next, p);
    if (!(nn > 0.0) || !std::isfinite(nn)) {
      run.done = true;
      return;
    }
    scale(next, 1.0 / nn);
    // Fixed-point residual; the value alone can stall long before the
    // iterate settles when the top of the spectrum is nearly degenerate.
    for (std::size_t i = 0; i < n; ++i) run.x[i] -= next[i];
    const double residual = p_norm(run.x, p);
    run.x = std::move(next);
    run.done = residual <= opts.tol || run.steps >= opts.max_iter;
    // Complex iterates can cycle without settling; stop once the value stalls.
    if (run.steps % kBoydStallWindow == 0) {
      run.done = run.done || run.value - run.window_start <= opts.tol * run.value;
      run.window_start = run.value;
    }
  };

  std::vector<Run> runs;
  for (auto& x : starts) {
    scale(x, 1.0 / p_norm(x, p));
    Run run{std::move(x)};
    while (!run.done && run.steps < std::min(opts.max_iter, kBoydExploreSteps)) step(run);
    runs.push_back(std::move(run));
  }
  // Only the leading start is iterated to convergence.
  Run* lead = nullptr;
  for (auto& run : runs)
    if (!run.done && (!lead || run.value > lead->value)) lead = &run;
  if (lead)
    while (!lead->done) step(*lead);
  return best;
}

double norm_p_lower_boyd(const ToeplitzTruncation& T, double p, std::uint64_t seed, double tol) {
  BoydOptions opts;
  opts.tol = tol;
  return boyd_lower_bound(T, p, seed, opts).value;
}

double interpolation_upper(double p, double a1, double a2) {
  if (!(p >= 1.0)) throw std::invalid_argument("interpolation_upper needs p >= 1");
  if (p == 1.0 || std::isinf(p)) return a1;
  if (p == 2.0) return a2;
  if (p < 2.0) {
    const double theta = 2.0 * (1.0 - 1.0 / p);
    return std::pow(a1, 1.0 - theta) * std::pow(a2, theta);
  }
  return std::pow(a2, 2.0 / p) * std::pow(a1, 1.0 - 2.0 / p);
}

double norm_p_upper_interpolate(const ToeplitzTruncation& T, double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("norm_p_upper_interpolate needs p in (1, inf)");
  return interpolation_upper(p, norm_exact_1_inf(T, 1.0), norm_2(T));
}

std::vector<cplx> dual_exponent_start(const ToeplitzTruncation& T, std::span<const cplx> x,
                                      double p) {
  const std::vector<cplx> z = dual_map(T.apply(x), p);
  const std::size_t n = z.size();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::conj(z[n - 1 - i]);
  return out;
}

std::vector<NormEstimate> multiplier_norm_curve(const CoefficientSequence& symbol, double p,
                                                std::span<const std::size_t> N_list,
                                                const EstimateOptions& opts) {
  if (!(p >= 1.0)) throw std::invalid_argument("multiplier norm needs p >= 1");
  if (!std::is_sorted(N_list.begin(), N_list.end()))
    throw std::invalid_argument("N_list must be ascending");

  const double q = dual_exponent(p);
  const bool endpoint = p == 1.0 || std::isinf(p);
  const bool hilbert = p == 2.0;
  std::vector<NormEstimate> out;
  std::vector<std::vector<cplx>> warm_p, warm_q;

  for (const std::size_t N : N_list) {
    if (N < 2) throw std::invalid_argument("multiplier norm needs N >= 2");
    const ToeplitzTruncation T(symbol, N);
    NormEstimate est;
    est.p = p;
    est.N = N;
    est.seed = opts.seed;
    const double a1 = norm_exact_1_inf(T, 1.0);
    if (endpoint) {
      est.lower = est.upper = a1;
      est.lower_method = est.upper_method = "exact_l1";
      out.push_back(est);
      continue;
    }
    const double a2 = norm_2(T, opts.norm2);
    if (hilbert) {
      est.lower = est.upper = a2;
      est.lower_method = est.upper_method = "lanczos";
      out.push_back(est);
      continue;
    }

    const BoydResult bp = boyd_lower_bound(T, p, opts.seed, opts.boyd, warm_p);
    double best = bp.value;
    std::string lower_method = "boyd(p=" + exponent_label(p) + ")";
    est.iterations = bp.iterations;
    std::vector<std::vector<cplx>> starts = warm_q;
    starts.push_back(dual_exponent_start(T, bp.maximizer, p));
    const BoydResult bq = boyd_lower_bound(T, q, opts.seed, opts.boyd, starts);
    est.iterations += bq.iterations;
    warm_p.assign(1, bp.maximizer);
    warm_q.assign(1, bq.maximizer);
    if (bq.value > best) {
      best = bq.value;
      lower_method = "boyd(q=" + exponent_label(q) + ")";
    }
    est.lower = best;
    est.upper = interpolation_upper(p, a1, a2);
    est.upper_method = "riesz_thorin";
    est.lower_method = lower_method;
    out.push_back(est);
  }
  return out;
}

std::vector<NormEstimate> multiplier_norm_curve(const AnalyticModel& m, double p,
                                                std::span<const std::size_t> N_list,
                                                const EstimateOptions& opts) {
  if (N_list.empty()) return {};
  const std::size_t n_max = *std::max_element(N_list.begin(), N_list.end());
  return multiplier_norm_curve(taylor_auto(m, n_max), p, N_list, opts);
}

NormEstimate multiplier_norm_estimate(const AnalyticModel& m, double p, std::size_t N,
                                      const EstimateOptions& opts) {
  const std::size_t ns[] = {N};
  return multiplier_norm_curve(m, p, ns, opts).front();
}

}  // namespace lpmult
