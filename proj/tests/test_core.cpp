#include <catch_amalgamated.hpp>

#include <random>

#include "infodesign/core.hpp"
#include "infodesign/geometry.hpp"

using namespace infodesign;
using Catch::Matchers::WithinAbs;

TEST_CASE("mean_type per distribution kind", "[core]") {
  CHECK(mean_type(TypeDistribution::uniform()) == 0.5);
  CHECK_THAT(mean_type(TypeDistribution::atoms({{0.2, 0.5}, {0.8, 0.5}})), WithinAbs(0.5, 1e-15));
  CHECK(mean_type(TypeDistribution::point_mass(0.3)) == 0.3);
  // CDF rising linearly to 0.5 at x=0.5, then a jump of 0.25 at x=0.5, then linear.
  const auto pl = TypeDistribution::piecewise_linear({{0, 0}, {0.5, 0.25}, {0.5, 0.5}, {1, 1}});
  // 0.25·0.25 + 0.25·0.5 + 0.5·0.75
  CHECK_THAT(pl.mean(), WithinAbs(0.5625, 1e-14));
}

TEST_CASE("integrate_over_types examples", "[core]") {
  const auto u = TypeDistribution::uniform();
  CHECK_THAT(integrate_over_types(u, [](double) { return 1.0; }, 0, 1), WithinAbs(1.0, 1e-12));
  CHECK_THAT(integrate_over_types(u, [](double t) { return t; }, 0, 1), WithinAbs(0.5, 1e-12));
  const auto two = TypeDistribution::atoms({{0.2, 0.5}, {0.8, 0.5}});
  CHECK_THAT(integrate_over_types(two, [](double t) { return t * t; }, 0, 0.5),
             WithinAbs(0.02, 1e-15));
  CHECK_THROWS_AS(integrate_over_types(u, [](double t) { return t; }, 0.6, 0.4), Error);
}

TEST_CASE("integrate_over_types agrees with the closed-form moments", "[core]") {
  const auto pl = TypeDistribution::piecewise_linear({{0, 0}, {0.3, 0.6}, {0.3, 0.7}, {1, 1}});
  for (double a : {0.0, 0.1, 0.3}) {
    for (double b : {0.3, 0.65, 1.0}) {
      if (a > b) continue;
      for (auto ends : {Endpoints::Closed, Endpoints::OpenLeft, Endpoints::OpenRight, Endpoints::Open}) {
        CHECK_THAT(integrate_over_types(pl, [](double) { return 1.0; }, a, b, ends),
                   WithinAbs(pl.mass(a, b, ends), 1e-10));
        CHECK_THAT(integrate_over_types(pl, [](double t) { return t; }, a, b, ends),
                   WithinAbs(pl.first_moment(a, b, ends), 1e-10));
      }
    }
  }
}

TEST_CASE("endpoint rules decide which atoms count", "[core]") {
  const auto d = TypeDistribution::atoms({{0.2, 0.25}, {0.5, 0.25}, {0.8, 0.5}});
  CHECK(d.mass(0.2, 0.8) == 1.0);
  CHECK(d.mass(0.2, 0.8, Endpoints::OpenLeft) == 0.75);
  CHECK(d.mass(0.2, 0.8, Endpoints::OpenRight) == 0.5);
  CHECK(d.mass(0.2, 0.8, Endpoints::Open) == 0.25);
  CHECK(d.cdf(0.5) == 0.5);
  CHECK(d.cdf(0.49) == 0.25);
  CHECK(d.quantile(0.25) == 0.2);
  CHECK(d.quantile(0.26) == 0.5);
  CHECK(d.quantile(1.0) == 0.8);
}

TEST_CASE("piecewise-linear approximation of the uniform has mean 1/2", "[core][property]") {
  std::vector<TypeDistribution::Knot> knots;
  for (int i = 0; i <= 1000; ++i) knots.push_back({i / 1000.0, i / 1000.0});
  const auto pl = TypeDistribution::piecewise_linear(knots);
  CHECK_THAT(mean_type(pl), WithinAbs(0.5, 1e-6));
  CHECK(pl.has_full_support());
  CHECK_THAT(pl.quantile(0.37), WithinAbs(0.37, 1e-12));
}

TEST_CASE("full support", "[core]") {
  CHECK(TypeDistribution::uniform().has_full_support());
  CHECK_FALSE(TypeDistribution::point_mass(0.4).has_full_support());
  CHECK_FALSE(TypeDistribution::atoms({{0.1, 0.5}, {0.9, 0.5}}).has_full_support());
  CHECK_FALSE(TypeDistribution::piecewise_linear({{0, 0}, {0.4, 1}, {1, 1}}).has_full_support());
}

TEST_CASE("constructors reject invalid primitives", "[core]") {
  CHECK_THROWS_AS(Market(3, 1), Error);
  CHECK_THROWS_AS(Market(0, 1), Error);
  CHECK_THROWS_AS(BinarySignal(0.6, 0.5), Error);
  CHECK_THROWS_AS(BinarySignal(-0.1, 0.5), Error);
  FiniteSignal::Matrix bad(2, 2);
  bad << 0.5, 0.4, 0.5, 0.5;
  CHECK_THROWS_AS(FiniteSignal(bad), Error);
  CHECK_THROWS_AS(TypeDistribution::atoms({{0.2, 0.5}, {0.8, 0.6}}), Error);
  CHECK_THROWS_AS(TypeDistribution::atoms({{1.2, 1.0}}), Error);
  CHECK_THROWS_AS(TypeDistribution::piecewise_linear({{0, 0}, {0.5, 0.7}, {1, 0.6}}), Error);
  CHECK_THROWS_AS(TypeDistribution::point_mass(-0.1), Error);
}

TEST_CASE("pooling realizations keeps a valid signal", "[core][property]") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index rows = 2 + trial % 3;
    const Eigen::Index cols = 2 + trial % 4;
    FiniteSignal::Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = unif(gen);
      m.row(r) /= m.row(r).sum();
    }
    const FiniteSignal sig(m);
    for (Eigen::Index i = 0; i < cols; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (i == j) continue;
        const FiniteSignal p = sig.pooled(i, j);
        CHECK(p.realization_count() == cols - 1);
      }
    }
  }
}

TEST_CASE("outcome set convexity and containment", "[core]") {
  const OutcomeSet tri({{0, 2}, {0, 5.0 / 3}, {1.0 / 3, 5.0 / 3}}, 0.5);
  CHECK(tri.is_convex());
  CHECK(tri.contains({0.1, 1.8}));
  CHECK_FALSE(tri.contains({0.3, 1.9}));
  CHECK(tri.signed_distance({0.1, 1.7}) < 0);
  const OutcomeSet dent({{0, 0}, {1, 0}, {0.2, 0.2}, {0, 1}}, 0.5);
  CHECK_FALSE(dent.is_convex());
}

TEST_CASE("geometry helpers", "[core][geometry]") {
  using geometry::Point;
  const geometry::Polyline square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {1, 0}};
  const auto hull = geometry::convex_hull(square);
  REQUIRE(hull.size() == 4);
  CHECK(geometry::signed_distance(Point(0.5, 0.25), hull) == -0.25);
  CHECK(geometry::signed_distance(Point(2, 0.5), hull) == 1.0);
  const auto clipped = geometry::clip_right_of(hull, 0.5);
  CHECK(geometry::convex_hull(clipped).size() == 4);
  CHECK_THAT(geometry::hausdorff(hull, {{0, 0}, {1, 0}, {1, 1}}, true, true, 0.01),
             WithinAbs(std::sqrt(0.5), 1e-9));
}
