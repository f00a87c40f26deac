#pragma once

#include <cstddef>
#include <vector>

#include "lpmult/circle_geometry.hpp"

namespace lpmult {

/// Arc lengths of a closed set sorted nonincreasing, with consecutive ratios
/// |J_{k+1}| / |J_k| and the maximum ratio over the tail k >= tail_start.
struct RatioReport {
  std::vector<double> lengths_desc;
  std::vector<double> ratios;
  std::size_t tail_start = 0;
  double tail_max_ratio = 0.0;
};

/// Number of arcs contributed by the anchors {pi, 3pi/2} of the generators
/// below; the default tail starts right after them.
inline constexpr std::size_t kAnchorArcs = 3;

/// Throws std::invalid_argument unless tail_start < arcs - 1.
RatioReport ratio_report(const ClosedCircleSet& set, std::size_t tail_start = kAnchorArcs);

/// True iff the tail ratios never exceed beta. beta must lie in (0, 1).
bool check_ratio_condition(const RatioReport& report, double beta);

/// {0, pi, 3pi/2} together with (pi/2) 2^{-k}, k = 0..K. Angle 0 is flagged as
/// the accumulation point.
ClosedCircleSet generate_dyadic_gap(int K);

/// {0, pi, 3pi/2} together with (pi/2) 2^{-k^2}, k = 0..K, K <= 5.
ClosedCircleSet generate_superlacunary(int K);

inline constexpr int kMaxSuperlacunaryK = 5;

}  // namespace lpmult
