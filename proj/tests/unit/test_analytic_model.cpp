#include <doctest.h>

#include <random>

#include "lpmult/analytic_model.hpp"
#include "lpmult/lp_sets.hpp"

using namespace lpmult;

namespace {

AnalyticModel half_plus_half_z() { return AnalyticModel::polynomial({0.5, 0.5}); }
AnalyticModel simple_pole() { return AnalyticModel::pole_sum({2.0}, {1.0}); }
StarDomain four_point_domain(double theta0 = kPi / 6) {
  return build_star_domain(ClosedCircleSet::from_angles({0, kPi / 2, kPi, 3 * kPi / 2}), theta0);
}

std::vector<AnalyticModel> sample_models() {
  return {
      half_plus_half_z(),
      simple_pole(),
      AnalyticModel::pole_sum({std::polar(1.3, 0.4), {-1.5, 0.2}}, {{0.3, -0.1}, 0.7}),
      AnalyticModel::blaschke({0.5, {0.1, -0.6}}),
      AnalyticModel::singular_inner(),
      AnalyticModel::product({AnalyticModel::blaschke({0.3}), simple_pole(), half_plus_half_z()}),
      AnalyticModel::sum({AnalyticModel::singular_inner(), AnalyticModel::polynomial({0, 0, 1})}, {0.5, {0, 2}}),
  };
}

}  // namespace

TEST_SUITE("analytic_model") {
  TEST_CASE("evaluation examples") {
    CHECK(std::abs(eval(half_plus_half_z(), 1.0) - 1.0) < 1e-15);
    CHECK(std::abs(eval(AnalyticModel::singular_inner(), 0.0) - std::exp(-1.0)) < 1e-15);
    CHECK(std::abs(eval(AnalyticModel::blaschke({0.5}), 0.0) - (-0.5)) < 1e-15);
    CHECK(std::abs(eval(AnalyticModel::constant({2, 3}), {0.3, 0.1}) - cplx(2, 3)) == 0.0);
  }

  TEST_CASE("derivative examples") {
    const auto z = AnalyticModel::polynomial({0, 1});
    for (const cplx p : {cplx(0, 0), cplx(0.3, -0.2), cplx(0.9, 0.1)}) CHECK(std::abs(eval_derivative(z, p) - 1.0) < 1e-15);
    CHECK(std::abs(eval_derivative(simple_pole(), 0.0) - 0.25) < 1e-15);
    CHECK(std::abs(eval_derivative(AnalyticModel::singular_inner(), 0.0) + 2.0 * std::exp(-1.0)) < 1e-15);
  }

  TEST_CASE("constructor invariants") {
    CHECK_THROWS(AnalyticModel::pole_sum({0.5}, {1.0}));
    CHECK_THROWS(AnalyticModel::pole_sum({1.0}, {1.0}));
    CHECK_THROWS(AnalyticModel::pole_sum({2.0, 3.0}, {1.0}));
    CHECK_THROWS(AnalyticModel::blaschke({1.0}));
    CHECK_THROWS(AnalyticModel::blaschke({{0.0, 1.5}}));
  }

  TEST_CASE("derivatives match central differences") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi), rad(0.0, 0.9);
    const double h = 1e-5;
    for (const auto& m : sample_models()) {
      for (int i = 0; i < 100; ++i) {
        const cplx z = std::polar(rad(rng), ang(rng));
        const cplx fd = (eval(m, z + h) - eval(m, z - h)) / (2 * h);
        const cplx d = eval_derivative(m, z);
        CHECK(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
      }
    }
  }

  TEST_CASE("blaschke products are unimodular on the circle") {
    const auto b = AnalyticModel::blaschke({0.5, {0.1, -0.6}, {-0.7, 0.2}});
    for (int k = 0; k < 1000; ++k) CHECK(std::abs(std::abs(eval(b, std::polar(1.0, kTwoPi * k / 1000))) - 1.0) <= 1e-12);
  }

  TEST_CASE("products and sums evaluate factorwise") {
    const auto f = AnalyticModel::blaschke({0.3});
    const auto g = simple_pole();
    const auto h = AnalyticModel::singular_inner();
    const auto p = AnalyticModel::product({f, g, h});
    const auto s = AnalyticModel::sum({f, h}, {2.0, {0, 1}});
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 100; ++i) {
      const cplx z{u(rng), u(rng)};
      CHECK(std::abs(eval(p, z) - eval(f, z) * eval(g, z) * eval(h, z)) <= 1e-12);
      CHECK(std::abs(eval(s, z) - (2.0 * eval(f, z) + cplx(0, 1) * eval(h, z))) <= 1e-12);
    }
  }

  TEST_CASE("singularities and analyticity radius") {
    CHECK(analyticity_radius(half_plus_half_z()) == std::numeric_limits<double>::infinity());
    CHECK(analyticity_radius(simple_pole()) == doctest::Approx(2.0));
    CHECK(analyticity_radius(AnalyticModel::blaschke({0.5})) == doctest::Approx(2.0));
    CHECK(analyticity_radius(AnalyticModel::singular_inner()) == doctest::Approx(1.0));
    CHECK(singularity_distance(simple_pole(), 1.0) == doctest::Approx(1.0));
  }

  TEST_CASE("circle sup norm examples") {
    CHECK(sup_norm_estimate(half_plus_half_z(), UnitCircleRegion{}, 4096).value >= 1.0 - 1e-6);
    CHECK(sup_norm_estimate(half_plus_half_z(), UnitCircleRegion{}, 4096).value <= 1.0 + 1e-15);
    CHECK(sup_norm_estimate(AnalyticModel::constant(1.0), UnitCircleRegion{}).value == 1.0);
    CHECK(sup_norm_estimate(AnalyticModel::constant(1.0), four_point_domain()).value == 1.0);
    CHECK(sup_norm_estimate(AnalyticModel::constant(1.0), VinogradovRegion{2.0, 0.3}).value == 1.0);
    const double s = sup_norm_estimate(AnalyticModel::singular_inner(), UnitCircleRegion{}, 4096).value;
    // Rounding of |e^{it}| = 1 is amplified by 2/|z - 1|^2 ~ 1e6 next to z = 1.
    CHECK(s <= 1.0 + 1e-9);
    CHECK(s >= 1.0 - 1e-9);
  }

  TEST_CASE("sup norm is monotone over nested grids") {
    const auto m = AnalyticModel::pole_sum({1.05, 1.02, 1.01}, {0.05, 0.02, 0.01});
    const auto d = build_star_domain(generate_dyadic_gap(6), kPi / 6);
    double prev = 0.0;
    for (std::size_t g = 64; g <= 8192; g *= 2) {
      const double v = sup_norm_estimate(m, d, g).value;
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("boundedness on the symmetric star domain") {
    const auto d = four_point_domain();
    // The triangle over the first arc reaches radius ~3.35 at angle pi/4.
    const cplx outside = std::polar(4.0, kPi / 4);
    REQUIRE_FALSE(d.contains(outside));
    CHECK(is_bounded_on(AnalyticModel::pole_sum({outside}, {1.0}), d));
    CHECK(d.contains(std::polar(1.5, kPi / 3)));
    CHECK_FALSE(is_bounded_on(AnalyticModel::pole_sum({std::polar(1.5, kPi / 3)}, {1.0}), d));
    const cplx inside = std::polar(1.05, kPi / 4);
    REQUIRE(d.contains(inside));
    CHECK_FALSE(is_bounded_on(AnalyticModel::pole_sum({inside}, {1.0}), d));
    CHECK(boundedness_violation(AnalyticModel::pole_sum({inside}, {1.0}), d).find("inside") != std::string::npos);
    CHECK_THROWS_AS(sup_norm_estimate(AnalyticModel::pole_sum({inside}, {1.0}), d), UnboundedModelError);
  }

  TEST_CASE("singular inner function is unbounded near F") {
    const auto d = build_star_domain(generate_dyadic_gap(4), kPi / 6);
    CHECK_FALSE(is_bounded_on(AnalyticModel::singular_inner(), d));
    // |S| grows without bound approaching z = 1 from inside the adjacent triangle.
    const Triangle& t = d.triangles()[0];
    double prev = 0.0;
    for (double u = 1e-1; u > 1e-3; u *= 0.5) {
      const cplx z = t.left() + u * (0.5 * (t.apex() + t.right()) - t.left());
      REQUIRE(d.contains(z));
      const double v = std::abs(eval(AnalyticModel::singular_inner(), z));
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(prev > 1e6);
  }

  TEST_CASE("poles above flagged points are bounded") {
    const auto d = build_star_domain(generate_dyadic_gap(8), kPi / 6);
    CHECK(is_bounded_on(AnalyticModel::pole_sum({1.05, 1.02, 1.01}, {0.05, 0.02, 0.01}), d));
  }
}
