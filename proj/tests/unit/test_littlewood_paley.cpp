#include <doctest.h>

#include <random>

#include "lpmult/fft.hpp"
#include "lpmult/littlewood_paley.hpp"
#include "lpmult/lp_sets.hpp"
#include "oracles.hpp"

using namespace lpmult;

namespace {

std::vector<cplx> pure(std::size_t N, std::size_t k) {
  std::vector<cplx> f(N);
  for (std::size_t j = 0; j < N; ++j) f[j] = std::polar(1.0, kTwoPi * static_cast<double>(j * k % N) / static_cast<double>(N));
  return f;
}

double l2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx x : v) s += std::norm(x);
  return std::sqrt(s);
}

std::vector<FrequencyPartition> partitions(std::size_t N) {
  return {FrequencyPartition::single_block(N),
          FrequencyPartition::from_cuts(N, {0, N / 4, N / 2, 3 * N / 4}),
          FrequencyPartition::from_cuts(N, {3, 17, 40, N - 5}),
          partition_from_set(generate_dyadic_gap(5), N),
          partition_from_set(generate_superlacunary(2), N)};
}

}  // namespace

TEST_SUITE("littlewood_paley") {
  TEST_CASE("uniform partition from the symmetric set") {
    const auto part = partition_from_set(ClosedCircleSet::from_angles({0, kPi / 2, kPi, 3 * kPi / 2}), 16);
    const std::vector<std::size_t> cuts(part.cut_points().begin(), part.cut_points().end());
    CHECK(cuts == std::vector<std::size_t>{0, 4, 8, 12});
    for (const auto& b : part.blocks()) CHECK(b.length == 4);
  }

  TEST_CASE("dyadic partition halves block lengths") {
    const auto part = partition_from_set(generate_dyadic_gap(3), 1024);
    std::vector<std::size_t> len;
    for (const auto& b : part.blocks()) len.push_back(b.length);
    // Tail blocks [0, t3), [t3, t2), [t2, t1), [t1, t0) with t_k = 256 * 2^{-k}.
    CHECK(len == std::vector<std::size_t>{32, 32, 64, 128, 256, 256, 256});
  }

  TEST_CASE("colliding cuts are rejected") {
    CHECK_THROWS(partition_from_set(ClosedCircleSet::from_angles({0, 0.1, kPi / 2, kPi, 3 * kPi / 2}), 8));
    CHECK_THROWS(partition_from_set(generate_dyadic_gap(3), 12));
    CHECK_THROWS(partition_from_set(generate_dyadic_gap(3), 4));
  }

  TEST_CASE("blocks cover every frequency exactly once") {
    for (const auto& part : partitions(256)) {
      std::vector<int> hits(256);
      for (const auto& b : part.blocks()) {
        CHECK(b.length > 0);
        for (std::size_t k = 0; k < 256; ++k) hits[k] += b.contains(k, 256);
      }
      for (const int h : hits) CHECK(h == 1);
    }
  }

  TEST_CASE("projection examples") {
    const std::size_t N = 64;
    std::mt19937_64 rng(1);
    const auto f = oracle::random_vector(rng, N);
    const auto all = project(f, FrequencyBlock{0, N});
    for (std::size_t i = 0; i < N; ++i) CHECK(std::abs(all[i] - f[i]) <= 1e-13);
    const auto e = pure(N, 10);
    const auto in = project(e, FrequencyBlock{8, 4});
    const auto out = project(e, FrequencyBlock{12, 20});
    for (std::size_t i = 0; i < N; ++i) {
      CHECK(std::abs(in[i] - e[i]) <= 1e-13);
      CHECK(std::abs(out[i]) <= 1e-13);
    }
    // Wrapping block.
    const auto wrap = project(pure(N, 2), FrequencyBlock{60, 8});
    CHECK(std::abs(wrap[5] - pure(N, 2)[5]) <= 1e-13);
  }

  TEST_CASE("projections are contractions") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
      const auto f = oracle::random_vector(rng, 128);
      CHECK(l2(project(f, FrequencyBlock{static_cast<std::size_t>(t), 37})) <= l2(f) * (1 + 1e-14));
    }
  }

  TEST_CASE("blocks are orthogonal and sum to f") {
    std::mt19937_64 rng(3);
    for (const auto& part : partitions(256)) {
      const auto f = oracle::random_vector(rng, 256);
      std::vector<std::vector<cplx>> pieces;
      for (const auto& b : part.blocks()) pieces.push_back(project(f, b));
      std::vector<cplx> sum(256);
      for (std::size_t a = 0; a < pieces.size(); ++a) {
        for (std::size_t i = 0; i < 256; ++i) sum[i] += pieces[a][i];
        for (std::size_t b = a + 1; b < pieces.size(); ++b) {
          cplx ip = 0.0;
          for (std::size_t i = 0; i < 256; ++i) ip += pieces[a][i] * std::conj(pieces[b][i]);
          CHECK(std::abs(ip) <= 1e-10);
        }
      }
      for (std::size_t i = 0; i < 256; ++i) CHECK(std::abs(sum[i] - f[i]) <= 1e-10);
    }
  }

  TEST_CASE("quadratic function examples") {
    std::mt19937_64 rng(4);
    const auto f = oracle::random_vector(rng, 64);
    const auto s = quadratic_function(f, FrequencyPartition::single_block(64));
    for (std::size_t i = 0; i < 64; ++i) CHECK(s[i] == std::abs(f[i]));
    const auto e = pure(64, 9);
    const auto se = quadratic_function(e, FrequencyPartition::from_cuts(64, {0, 8, 16, 40}));
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(se[i] - 1.0) <= 1e-13);
  }

  TEST_CASE("quadratic function preserves the l2 norm") {
    std::mt19937_64 rng(5);
    for (const auto& part : partitions(512)) {
      for (int t = 0; t < 20; ++t) {
        const auto f = oracle::random_vector(rng, 512);
        const auto s = quadratic_function(f, part);
        CHECK(normalized_lp_norm(s, 2.0) == doctest::Approx(normalized_lp_norm(f, 2.0)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("quadratic function is homogeneous") {
    std::mt19937_64 rng(6);
    const auto part = partition_from_set(generate_dyadic_gap(4), 256);
    const auto f = oracle::random_vector(rng, 256);
    const cplx lambda{-1.7, 0.6};
    std::vector<cplx> g(f);
    for (auto& x : g) x *= lambda;
    const auto a = quadratic_function(f, part), b = quadratic_function(g, part);
    for (std::size_t i = 0; i < 256; ++i) CHECK(std::abs(b[i] - std::abs(lambda) * a[i]) <= 1e-12 * (1 + a[i]));
  }

  TEST_CASE("constants at p = 2 are one") {
    for (const auto& part : partitions(256)) {
      const auto r = lp_constants_estimate(part, 2.0, 100, 3);
      CHECK(std::abs(r.ratio_min - 1.0) <= 1e-10);
      CHECK(std::abs(r.ratio_max - 1.0) <= 1e-10);
    }
  }

  TEST_CASE("single block constants are one for any p") {
    for (const double p : {1.5, 3.0, 6.0}) {
      const auto r = lp_constants_estimate(FrequencyPartition::single_block(128), p, 100, 1);
      CHECK(r.ratio_min == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(r.ratio_max == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("estimates are seeded and validated") {
    const auto part = partition_from_set(generate_dyadic_gap(5), 256);
    const auto a = lp_constants_estimate(part, 4.0, 100, 9);
    const auto b = lp_constants_estimate(part, 4.0, 100, 9);
    CHECK(a.ratio_min == b.ratio_min);
    CHECK(a.ratio_max == b.ratio_max);
    CHECK(a.ratio_min <= a.ratio_max);
    CHECK(a.seed == 9);
    CHECK_THROWS(lp_constants_estimate(part, 4.0, 99, 9));
    CHECK_THROWS(lp_constants_estimate(part, 1.0, 100, 9));
  }

  TEST_CASE("dyadic bracket is stable when N doubles") {
    const auto set = generate_dyadic_gap(8);
    const auto a = lp_constants_estimate(partition_from_set(set, 1024), 4.0, 500, 11);
    const auto b = lp_constants_estimate(partition_from_set(set, 2048), 4.0, 500, 11);
    const double wa = a.ratio_max / a.ratio_min, wb = b.ratio_max / b.ratio_min;
    MESSAGE("bracket N=1024 [" << a.ratio_min << ", " << a.ratio_max << "], N=2048 [" << b.ratio_min << ", "
                               << b.ratio_max << "]");
    CHECK(wb <= 1.25 * wa);
  }
}
