#include <benchmark/benchmark.h>

#include <random>

#include "lpmult/fft.hpp"
#include "lpmult/multiplier_norms.hpp"
#include "lpmult/taylor.hpp"

using namespace lpmult;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {nd(rng), nd(rng)};
  return v;
}

ToeplitzTruncation pole_truncation(std::size_t N) {
  const auto m = AnalyticModel::pole_sum({1.05, 1.02, 1.01}, {0.05, 0.02, 0.01});
  return ToeplitzTruncation(taylor_exact(m, N).coeffs, N);
}

void BM_fft(benchmark::State& state) {
  const auto x = random_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(fft(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_fft)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

void BM_toeplitz_apply(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto T = pole_truncation(N);
  const auto x = random_vector(N, 2);
  for (auto _ : state) benchmark::DoNotOptimize(T.apply(x));
}
BENCHMARK(BM_toeplitz_apply)->RangeMultiplier(2)->Range(32, 4096);

void BM_norm_2(benchmark::State& state) {
  const auto T = pole_truncation(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(norm_2(T));
}
BENCHMARK(BM_norm_2)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_boyd(benchmark::State& state) {
  const auto T = pole_truncation(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(boyd_lower_bound(T, 4.0 / 3.0, 1).value);
}
BENCHMARK(BM_boyd)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
