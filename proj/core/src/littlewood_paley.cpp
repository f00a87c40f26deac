#include "lpmult/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "lpmult/fft.hpp"

namespace lpmult {

FrequencyPartition FrequencyPartition::from_cuts(std::size_t N, std::vector<std::size_t> cuts) {
  if (!is_power_of_two(N)) throw std::invalid_argument("partition size must be a power of two");
  if (cuts.empty()) throw std::invalid_argument("partition needs at least one cut");
  for (auto& c : cuts) c %= N;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  FrequencyPartition part;
  part.n_ = N;
  part.cuts_ = std::move(cuts);
  const std::size_t m = part.cuts_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t start = part.cuts_[i];
    const std::size_t next = i + 1 < m ? part.cuts_[i + 1] : part.cuts_[0] + N;
    part.blocks_.push_back({start, next - start});
  }
  return part;
}

FrequencyPartition partition_from_set(const ClosedCircleSet& set, std::size_t N) {
  if (!is_power_of_two(N) || N < 8)
    throw std::invalid_argument("partition grid N must be a power of two >= 8, got " +
                                std::to_string(N));
  std::vector<std::size_t> cuts;
  for (const double a : set.points()) {
    const auto k = static_cast<std::size_t>(std::llround(a * static_cast<double>(N) / kTwoPi)) % N;
    if (std::find(cuts.begin(), cuts.end(), k) != cuts.end())
      throw std::invalid_argument("set point at angle " + std::to_string(a) +
                                  " collapses onto cut " + std::to_string(k) + " at N = " +
                                  std::to_string(N));
    cuts.push_back(k);
  }
  return FrequencyPartition::from_cuts(N, std::move(cuts));
}

namespace {

std::vector<cplx> masked_inverse(const std::vector<cplx>& spectrum, const FrequencyBlock& block) {
  const std::size_t n = spectrum.size();
  std::vector<cplx> buf(n);
  for (std::size_t j = 0; j < block.length; ++j) {
    const std::size_t k = (block.start + j) % n;
    buf[k] = spectrum[k];
  }
  return ifft(std::move(buf));
}

}  // namespace

std::vector<cplx> project(std::span<const cplx> f, const FrequencyBlock& block) {
  const std::size_t n = f.size();
  if (block.length > n || block.start >= n)
    throw std::invalid_argument("frequency block out of range");
  return masked_inverse(fft(std::vector<cplx>(f.begin(), f.end())), block);
}

std::vector<double> quadratic_function(std::span<const cplx> f, const FrequencyPartition& part) {
  if (f.size() != part.N()) throw std::invalid_argument("quadratic_function: size mismatch");
  std::vector<double> acc(f.size());
  if (part.blocks().size() == 1) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::abs(f[i]);
    return acc;
  }
  const std::vector<cplx> spectrum = fft(std::vector<cplx>(f.begin(), f.end()));
  for (const FrequencyBlock& b : part.blocks()) {
    const std::vector<cplx> piece = masked_inverse(spectrum, b);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(piece[i]);
  }
  for (double& v : acc) v = std::sqrt(v);
  return acc;
}

double normalized_lp_norm(std::span<const cplx> x, double p) {
  double s = 0.0;
  for (const cplx v : x) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(x.size()), 1.0 / p);
}

double normalized_lp_norm(std::span<const double> x, double p) {
  double s = 0.0;
  for (const double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(x.size()), 1.0 / p);
}

LPConstantsReport lp_constants_estimate(const FrequencyPartition& part, double p,
                                        std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("lp_constants_estimate needs trials >= 100");
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("lp_constants_estimate needs p in (1, inf)");
  const std::size_t n = part.N();

  LPConstantsReport rep;
  rep.p = p;
  rep.N = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;

  auto record = [&](const std::vector<cplx>& f) {
    const double nf = normalized_lp_norm(f, p);
    if (!(nf > 0.0)) return;
    const double r = normalized_lp_norm(quadratic_function(f, part), p) / nf;
    rep.ratio_min = std::min(rep.ratio_min, r);
    rep.ratio_max = std::max(rep.ratio_max, r);
  };
  auto stream = [&](std::uint64_t tag, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
  };
  auto gaussian = [&](std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<cplx> v(n);
    for (auto& x : v) {
      const double re = nd(rng);
      x = {re, nd(rng)};
    }
    return v;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(0, t);
    record(gaussian(rng));
  }

  const auto blocks = part.blocks();
  {
    auto rng = stream(1, 0);
    const std::vector<cplx> spectrum = fft(gaussian(rng));
    std::vector<std::vector<cplx>> pieces;
    for (const FrequencyBlock& b : blocks) {
      pieces.push_back(masked_inverse(spectrum, b));
      record(pieces.back());
    }
    // Random sign combinations of the block pieces.
    std::bernoulli_distribution coin;
    for (std::size_t c = 0; c < 32; ++c) {
      std::vector<cplx> f(n);
      for (const auto& piece : pieces) {
        const double s = coin(rng) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) f[i] += s * piece[i];
      }
      record(f);
    }
  }
  // One exponential per block with random phases: sums of well-separated
  // frequencies, the classical extremal shape for quadratic functions.
  {
    auto rng = stream(2, 0);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (std::size_t c = 0; c < 32; ++c) {
      std::vector<cplx> spectrum(n);
      for (const FrequencyBlock& b : blocks) {
        std::uniform_int_distribution<std::size_t> offset(0, b.length - 1);
        spectrum[(b.start + (c == 0 ? 0 : offset(rng))) % n] = std::polar(1.0, phase(rng));
      }
      record(ifft(std::move(spectrum)));
    }
  }
  return rep;
}

}  // namespace lpmult
