#include "lpmult/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lpmult/fft.hpp"

namespace lpmult {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<cplx> exact_coeffs(const AnalyticModel& m, std::size_t N) {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) {
            std::vector<cplx> c(N);
            std::copy_n(p.coeffs.begin(), std::min(N, p.coeffs.size()), c.begin());
            return c;
          },
          [&](const PoleSum& p) {
            std::vector<cplx> c(N);
            for (std::size_t k = 0; k < p.poles.size(); ++k) {
              const double logr = -std::log(std::abs(p.poles[k]));
              const double ang = -std::arg(p.poles[k]);
              for (std::size_t n = 0; n < N; ++n) {
                const double e = static_cast<double>(n + 1);
                c[n] += p.weights[k] * std::polar(std::exp(e * logr), e * ang);
              }
            }
            return c;
          },
          [&](const Product& p) {
            std::vector<cplx> acc = exact_coeffs(p.factors.front(), N);
            for (std::size_t f = 1; f < p.factors.size(); ++f) {
              const std::vector<cplx> b = exact_coeffs(p.factors[f], N);
              std::vector<cplx> out(N);
              for (std::size_t n = 0; n < N; ++n)
                for (std::size_t k = 0; k <= n; ++k) out[n] += acc[k] * b[n - k];
              acc = std::move(out);
            }
            return acc;
          },
          [&](const Sum& s) {
            std::vector<cplx> c(N);
            for (std::size_t k = 0; k < s.terms.size(); ++k) {
              const std::vector<cplx> t = exact_coeffs(s.terms[k], N);
              for (std::size_t n = 0; n < N; ++n) c[n] += s.weights[k] * t[n];
            }
            return c;
          },
          [&](const auto&) -> std::vector<cplx> {
            throw UnsupportedModelError("no closed-form Taylor expansion for " + m.tag() +
                                        "; use taylor_dft");
          },
      },
      m.variant());
}

bool only_singular_inner_on(const AnalyticModel& m, double radius) {
  // True when every singularity on |z| = radius is the bounded essential
  // singularity of the singular inner function.
  bool ok = true;
  std::visit(overloaded{
                 [&](const PoleSum& p) {
                   for (const cplx w : p.poles)
                     if (std::abs(w) <= radius) ok = false;
                 },
                 [&](const BlaschkeFinite& b) {
                   for (const cplx a : b.zeros)
                     if (a != cplx(0.0, 0.0) && 1.0 / std::abs(a) <= radius) ok = false;
                 },
                 [&](const Product& p) {
                   for (const auto& f : p.factors) ok = ok && only_singular_inner_on(f, radius);
                 },
                 [&](const Sum& s) {
                   for (const auto& t : s.terms) ok = ok && only_singular_inner_on(t, radius);
                 },
                 [](const auto&) {},
             },
             m.variant());
  return ok;
}

double sampled_circle_max(const AnalyticModel& m, double r, std::size_t grid) {
  const auto sing = singularities(m);
  double best = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const cplx z = std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
    bool skip = false;
    for (const cplx w : sing) skip = skip || std::abs(z - w) < 1e-14;
    if (!skip) best = std::max(best, std::abs(eval(m, z)));
  }
  return best;
}

struct CauchyRadius {
  double r;
  double max_abs;
};

std::vector<CauchyRadius> cauchy_radii(const AnalyticModel& m, double rho, std::size_t grid) {
  const double R = analyticity_radius(m);
  const double top = std::isfinite(R) ? R : std::max(4.0, 4.0 * rho);
  std::vector<CauchyRadius> out;
  for (const double f : {0.25, 0.5, 0.75, 0.9, 0.97}) {
    const double r = rho + f * (top - rho);
    // Resolve the peak near the closest singularity: spacing <= (R - r)/8.
    std::size_t g = grid;
    if (std::isfinite(R)) {
      const double need = 16.0 * kPi * r / (R - r);
      if (need > static_cast<double>(g))
        g = std::min(kMaxDftGrid, static_cast<std::size_t>(std::ceil(need)));
    }
    out.push_back({r, sampled_circle_max(m, r, g)});
  }
  if (std::isfinite(R) && R > rho && only_singular_inner_on(m, R))
    out.push_back({R, sampled_circle_max(m, R, grid)});
  return out;
}

double alias_bound_from(const std::vector<CauchyRadius>& radii, double max_rho, std::size_t N,
                        double rho, std::size_t M) {
  const double last = static_cast<double>(N - 1);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [r, mr] : radii) {
    const double q = rho / r;
    const double qm = std::pow(q, static_cast<double>(M));
    const double tail = qm / (1.0 - qm);
    const double worst_pow = std::max(1.0, std::pow(r, -last));
    best = std::min(best, mr * worst_pow * tail);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding =
      8.0 * eps * std::log2(static_cast<double>(M) + 1.0) * max_rho * std::pow(rho, -last);
  return best + rounding;
}

std::size_t sup_grid_for(std::size_t M) { return std::max<std::size_t>(4096, 4 * M); }

void check_dft_args(std::size_t N, double rho, std::size_t M) {
  if (N == 0) throw std::invalid_argument("taylor_dft needs N >= 1");
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("taylor_dft needs rho in (0, 1), got " + std::to_string(rho));
  if (!is_power_of_two(M)) throw std::invalid_argument("taylor_dft grid M must be a power of two");
  if (M < N) throw std::invalid_argument("taylor_dft grid M must be >= N");
}

}  // namespace

bool has_exact_taylor(const AnalyticModel& m) {
  return std::visit(overloaded{
                        [](const Polynomial&) { return true; },
                        [](const PoleSum&) { return true; },
                        [](const Product& p) {
                          return std::all_of(p.factors.begin(), p.factors.end(), has_exact_taylor);
                        },
                        [](const Sum& s) {
                          return std::all_of(s.terms.begin(), s.terms.end(), has_exact_taylor);
                        },
                        [](const auto&) { return false; },
                    },
                    m.variant());
}

CoefficientSequence taylor_exact(const AnalyticModel& m, std::size_t N) {
  if (N == 0) throw std::invalid_argument("taylor_exact needs N >= 1");
  return CoefficientSequence{exact_coeffs(m, N), std::nullopt, std::nullopt};
}

double predicted_alias_bound(const AnalyticModel& m, std::size_t N, double rho, std::size_t M) {
  check_dft_args(N, rho, M);
  const auto radii = cauchy_radii(m, rho, sup_grid_for(M));
  return alias_bound_from(radii, sampled_circle_max(m, rho, sup_grid_for(M)), N, rho, M);
}

CoefficientSequence taylor_dft(const AnalyticModel& m, std::size_t N, double rho, std::size_t M) {
  check_dft_args(N, rho, M);
  if (!(analyticity_radius(m) > rho))
    throw SingularityError("model is not analytic on |z| <= rho");

  std::vector<cplx> samples(M);
  double max_rho = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    samples[j] = eval(m, std::polar(rho, kTwoPi * static_cast<double>(j) / static_cast<double>(M)));
    max_rho = std::max(max_rho, std::abs(samples[j]));
  }
  fft_inplace(samples);

  CoefficientSequence seq;
  seq.coeffs.resize(N);
  const double inv_m = 1.0 / static_cast<double>(M);
  for (std::size_t n = 0; n < N; ++n)
    seq.coeffs[n] = samples[n] * inv_m * std::pow(rho, -static_cast<double>(n));
  seq.dft = DftSource{rho, M};
  const std::size_t grid = sup_grid_for(M);
  max_rho = std::max(max_rho, sampled_circle_max(m, rho, grid));
  seq.alias_bound = alias_bound_from(cauchy_radii(m, rho, grid), max_rho, N, rho, M);
  return seq;
}

DftParameters choose_dft_parameters(const AnalyticModel& m, std::size_t N, double target) {
  if (N == 0) throw std::invalid_argument("choose_dft_parameters needs N >= 1");
  const double R = analyticity_radius(m);
  const double n = static_cast<double>(std::max<std::size_t>(N, 4));
  // Radii close to 1 keep rho^{-N} (rounding amplification) near e^c; the
  // classical radii suit short sequences with a nearby singularity.
  std::vector<double> candidates{0.5, 0.75, 0.9, 0.95};
  for (const double c : {1.0, 2.0, 4.0, 8.0}) candidates.push_back(1.0 - c / n);

  const std::size_t first = next_power_of_two(2 * N);
  DftParameters best;
  double best_bound = std::numeric_limits<double>::infinity();
  for (const double rho : candidates) {
    if (!(rho >= 0.5 && rho < 1.0 && rho < R)) continue;
    const std::size_t grid = sup_grid_for(first);
    const auto radii = cauchy_radii(m, rho, grid);
    const double max_rho = sampled_circle_max(m, rho, grid);
    std::size_t M = first;
    double bound = alias_bound_from(radii, max_rho, N, rho, M);
    while (M < kMaxDftGrid && bound > target) {
      M <<= 1;
      bound = alias_bound_from(radii, max_rho, N, rho, M);
    }
    const bool ok = bound <= target;
    const bool best_ok = best_bound <= target;
    if ((ok && (!best_ok || M < best.grid || (M == best.grid && bound < best_bound))) ||
        (!ok && !best_ok && bound < best_bound)) {
      best = {rho, M};
      best_bound = bound;
    }
  }
  if (best.grid == 0) throw SingularityError("no admissible DFT radius below the analyticity radius");
  return best;
}

CoefficientSequence taylor_auto(const AnalyticModel& m, std::size_t N) {
  if (has_exact_taylor(m)) return taylor_exact(m, N);
  const DftParameters prm = choose_dft_parameters(m, N);
  return taylor_dft(m, N, prm.rho, prm.grid);
}

double p_norm(std::span<const cplx> x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_norm needs p >= 1, got " + std::to_string(p));
  double mx = 0.0;
  for (const cplx v : x) mx = std::max(mx, std::abs(v));
  if (std::isinf(p) || mx == 0.0) return mx;
  double s = 0.0;
  if (p == 1.0) {
    for (const cplx v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    for (const cplx v : x) s += std::norm(v / mx);
    return mx * std::sqrt(s);
  }
  for (const cplx v : x) s += std::pow(std::abs(v) / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

}  // namespace lpmult
