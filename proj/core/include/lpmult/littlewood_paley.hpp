#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpmult/circle_geometry.hpp"

namespace lpmult {

/// Half-open cyclic run of frequencies [start, start + length) mod N.
struct FrequencyBlock {
  std::size_t start = 0;
  std::size_t length = 0;

  bool contains(std::size_t k, std::size_t N) const { return (k + N - start) % N < length; }
};

/// Partition of the frequencies 0..N-1 into the blocks between consecutive
/// cut points. The block after the last cut wraps around to the first cut.
class FrequencyPartition {
 public:
  /// Cuts are reduced mod N, sorted and deduplicated; at least one is needed.
  static FrequencyPartition from_cuts(std::size_t N, std::vector<std::size_t> cuts);
  /// One block holding every frequency.
  static FrequencyPartition single_block(std::size_t N) { return from_cuts(N, {0}); }

  std::size_t N() const { return n_; }
  std::span<const std::size_t> cut_points() const { return cuts_; }
  std::span<const FrequencyBlock> blocks() const { return blocks_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> cuts_;
  std::vector<FrequencyBlock> blocks_;
};

/// Cut k = round(angle N / 2pi) mod N for each point of the set. Throws
/// std::invalid_argument if N is not a power of two >= 8 or if two points of
/// the set land on the same cut.
FrequencyPartition partition_from_set(const ClosedCircleSet& set, std::size_t N);

/// S_I f: inverse DFT of the DFT of f masked to the block.
std::vector<cplx> project(std::span<const cplx> f, const FrequencyBlock& block);

/// S(f) = (sum_I |S_I f|^2)^{1/2}, pointwise.
std::vector<double> quadratic_function(std::span<const cplx> f, const FrequencyPartition& part);

/// (N^{-1} sum |x_i|^p)^{1/p}
double normalized_lp_norm(std::span<const cplx> x, double p);
double normalized_lp_norm(std::span<const double> x, double p);

/// Empirical bracket over test functions of ||S f||_p / ||f||_p.
/// ratio_min bounds c1(p) from above, ratio_max bounds c2(p) from below.
struct LPConstantsReport {
  double p = 2.0;
  std::size_t N = 0;
  std::size_t trials = 0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  std::uint64_t seed = 0;
};

/// `trials` seeded Gaussian vectors (stream per trial index) plus structured
/// test functions: each block alone, and random sign combinations of
/// per-block pieces. trials >= 100, p in (1, inf).
LPConstantsReport lp_constants_estimate(const FrequencyPartition& part, double p,
                                        std::size_t trials, std::uint64_t seed);

}  // namespace lpmult
