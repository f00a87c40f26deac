#include "lpmult/lp_sets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace lpmult {

RatioReport ratio_report(const ClosedCircleSet& set, std::size_t tail_start) {
  const auto arcs = complementary_arcs(set);
  if (arcs.size() < 2 || tail_start + 1 >= arcs.size())
    throw std::invalid_argument("ratio_report: tail_start " + std::to_string(tail_start) +
                                " needs more than " + std::to_string(arcs.size()) + " arcs");
  RatioReport report;
  report.lengths_desc.reserve(arcs.size());
  for (const Arc& a : arcs) report.lengths_desc.push_back(a.length);
  std::sort(report.lengths_desc.begin(), report.lengths_desc.end(), std::greater<>());
  for (std::size_t k = 0; k + 1 < report.lengths_desc.size(); ++k)
    report.ratios.push_back(report.lengths_desc[k + 1] / report.lengths_desc[k]);
  report.tail_start = tail_start;
  report.tail_max_ratio =
      *std::max_element(report.ratios.begin() + static_cast<std::ptrdiff_t>(tail_start),
                        report.ratios.end());
  return report;
}

bool check_ratio_condition(const RatioReport& report, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0, 1), got " + std::to_string(beta));
  return report.tail_max_ratio <= beta;
}

namespace {

ClosedCircleSet with_anchors(std::vector<double> tail) {
  tail.push_back(0.0);
  tail.push_back(kPi);
  tail.push_back(1.5 * kPi);
  const double acc[] = {0.0};
  return ClosedCircleSet::from_angles(std::move(tail), acc);
}

}  // namespace

ClosedCircleSet generate_dyadic_gap(int K) {
  if (K < 1) throw std::invalid_argument("dyadic_gap needs K >= 1");
  std::vector<double> tail;
  for (int k = 0; k <= K; ++k) tail.push_back(0.5 * kPi * std::ldexp(1.0, -k));
  return with_anchors(std::move(tail));
}

ClosedCircleSet generate_superlacunary(int K) {
  if (K < 1) throw std::invalid_argument("superlacunary needs K >= 1");
  if (K > kMaxSuperlacunaryK)
    throw std::invalid_argument("superlacunary K = " + std::to_string(K) +
                                " exceeds the double-precision guard K <= 5");
  std::vector<double> tail;
  for (int k = 0; k <= K; ++k) tail.push_back(0.5 * kPi * std::ldexp(1.0, -k * k));
  return with_anchors(std::move(tail));
}

}  // namespace lpmult
