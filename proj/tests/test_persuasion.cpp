#include <catch_amalgamated.hpp>

#include <random>

#include "infodesign/geometry.hpp"
#include "infodesign/payoffs.hpp"
#include "infodesign/persuasion.hpp"

using namespace infodesign;
using Catch::Matchers::WithinAbs;

namespace {

const Market kM13(1, 3);
const Market kM23(2, 3);

double boundary_distance(const ImplementableSet& s, const WelfareOutcome& p) {
  return std::abs(s.set.signed_distance(p));
}

geometry::Polyline points_of(const OutcomeSet& s) {
  geometry::Polyline out;
  for (const auto& p : s.boundary()) out.push_back(p.vec());
  return out;
}

}  // namespace

TEST_CASE("graph sample endpoints and prior", "[persuasion]") {
  const auto u = TypeDistribution::uniform();
  const auto g = sample_graph(kM13, u, 11);
  CHECK(g.mus().front() == 0.0);
  CHECK(g.mus().back() == 1.0);
  CHECK_THAT(g.points().front().seller_profit, WithinAbs(1.0, 1e-15));
  CHECK(g.points().front().buyer_surplus == 0.0);
  CHECK_THAT(g.points().back().seller_profit, WithinAbs(3.0, 1e-15));
  CHECK(g.mus()[g.prior_index()] == 0.5);
  CHECK_THAT(g.points()[g.prior_index()].buyer_surplus, WithinAbs(1.0 / 9, 1e-12));
  CHECK_THAT(g.points()[g.prior_index()].seller_profit, WithinAbs(5.0 / 3, 1e-12));
  CHECK_THROWS_AS(sample_graph(kM13, u, 2), Error);

  // Kink beliefs for atoms are inserted and carry High tie-break alternates.
  const auto atoms = TypeDistribution::atoms({{0.2, 0.5}, {0.8, 0.5}});
  const auto ga = sample_graph(kM13, atoms, 11);
  CHECK(ga.alternates().size() == 2);
  for (std::size_t i = 1; i < ga.size(); ++i) CHECK(ga.mus()[i - 1] < ga.mus()[i]);
}

TEST_CASE("support values in the axis directions", "[persuasion]") {
  const auto u = TypeDistribution::uniform();
  const auto up = support_value({0, 1}, kM13, u, 2001);
  CHECK_THAT(up.value, WithinAbs(2.0, 1e-12));
  REQUIRE(up.split.size() == 2);
  CHECK(up.split.support[0] == 0.0);
  CHECK(up.split.support[1] == 1.0);
  CHECK_THAT(up.split.weights[0], WithinAbs(0.5, 1e-15));

  const auto down = support_value({0, -1}, kM13, u, 2001);
  CHECK_THAT(down.value, WithinAbs(-5.0 / 3, 1e-12));
  REQUIRE(down.split.size() == 1);
  CHECK(down.split.support[0] == 0.5);

  // Buyer-optimal: pool types below belief 1/3, reveal H on the flagged realization.
  const auto right = support_value({1, 0}, kM13, u, 2001);
  CHECK_THAT(right.value, WithinAbs(0.125, 1e-6));
  REQUIRE(right.split.size() == 2);
  CHECK_THAT(right.split.support[0], WithinAbs(1.0 / 3, 1e-3));
  CHECK_THAT(right.split.support[1], WithinAbs(1.0, 1e-3));
  CHECK_THAT(right.split.weights[0], WithinAbs(0.75, 1e-3));
  CHECK_THROWS_AS(support_value({0, 0}, kM13, u, 101), Error);
}

TEST_CASE("implementable set passes through the anchor outcomes", "[persuasion]") {
  const auto u = TypeDistribution::uniform();
  const auto s13 = implementable_set(kM13, u, 2001, 720);
  CHECK(s13.set.is_convex());
  CHECK(boundary_distance(s13, {0, 2}) <= 1e-3);
  CHECK(boundary_distance(s13, {1.0 / 9, 5.0 / 3}) <= 1e-3);
  CHECK(boundary_distance(s13, {0.125, 1.75}) <= 1e-3);
  const auto s23 = implementable_set(kM23, u, 2001, 720);
  CHECK(boundary_distance(s23, {0, 2.5}) <= 1e-3);
  CHECK(boundary_distance(s23, {2.0 / 9, 13.0 / 6}) <= 1e-3);
  CHECK_THROWS_AS(implementable_set(kM13, u, 101, 4), Error);
}

TEST_CASE("point-mass types reproduce the observable triangle", "[persuasion]") {
  for (double theta0 : {0.2, 0.5, 0.7}) {
    for (const Market& m : {kM13, kM23}) {
      const auto d = TypeDistribution::point_mass(theta0);
      const auto s = implementable_set(m, d, 2001, 720);
      const double h = geometry::hausdorff(points_of(s.set), points_of(observable_triangle(m, d)),
                                           true, true, 1e-3);
      CHECK(h <= 1e-3);
    }
  }
}

TEST_CASE("split_to_signal examples", "[persuasion]") {
  const auto full = split_to_signal({{0, 1}, {0.5, 0.5}, {TieBreak::Low, TieBreak::Low}}, 0.5);
  CHECK(full(0, 0) == 1.0);
  CHECK(full(1, 1) == 1.0);
  const auto none = split_to_signal(BeliefSplit::point(0.3), 0.3);
  CHECK(none.realization_count() == 1);
  const auto s = split_to_signal({{0, 0.5}, {0.5, 0.5}, {TieBreak::Low, TieBreak::Low}}, 0.25);
  CHECK_THAT(s(1, 1), WithinAbs(1.0, 1e-15));
  CHECK_THAT(s(0, 1), WithinAbs(1.0 / 3, 1e-15));
  // Posteriors under the basic prior reproduce the support.
  const double post = 0.25 * s(1, 1) / (0.25 * s(1, 1) + 0.75 * s(0, 1));
  CHECK_THAT(post, WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(split_to_signal({{0.1, 0.9}, {0.5, 0.5}, {TieBreak::Low, TieBreak::Low}}, 0.3),
                  Error);
}

TEST_CASE("outcome_of_signal anchors", "[persuasion]") {
  const auto u = TypeDistribution::uniform();
  const auto none = outcome_of_signal(FiniteSignal::uninformative(2), kM13, u);
  CHECK_THAT(none.buyer_surplus, WithinAbs(1.0 / 9, 1e-12));
  CHECK_THAT(none.seller_profit, WithinAbs(5.0 / 3, 1e-12));
  const auto full = outcome_of_signal(FiniteSignal::fully_informative(2), kM13, u);
  CHECK_THAT(full.buyer_surplus, WithinAbs(0.0, 1e-12));
  CHECK_THAT(full.seller_profit, WithinAbs(2.0, 1e-12));
  const auto flag = outcome_of_signal(FiniteSignal::from_binary(BinarySignal(0, 0.5)), kM13, u);
  CHECK_THAT(flag.buyer_surplus, WithinAbs(0.125, 1e-12));
  CHECK_THAT(flag.seller_profit, WithinAbs(1.75, 1e-12));
}

TEST_CASE("signal and split outcomes agree", "[persuasion][property]") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<TypeDistribution> dists{
      TypeDistribution::uniform(), TypeDistribution::atoms({{0.2, 0.5}, {0.8, 0.5}}),
      TypeDistribution::piecewise_linear({{0, 0}, {0.3, 0.6}, {0.3, 0.7}, {1, 1}})};
  for (const auto& d : dists) {
    const double mu0 = d.mean();
    for (int trial = 0; trial < 200; ++trial) {
      const double lo = mu0 * unif(gen);
      const double mid = mu0 + (1 - mu0) * unif(gen);
      const double hi = mid + (1 - mid) * unif(gen);
      // three-point split with weights solving the mean constraint
      const double w_mid = 0.3 * unif(gen);
      const double rest_mean = (mu0 - w_mid * mid) / (1 - w_mid);
      if (rest_mean <= lo || rest_mean >= hi) continue;
      const double w_lo = (1 - w_mid) * (hi - rest_mean) / (hi - lo);
      const BeliefSplit split{{lo, mid, hi},
                              {w_lo, w_mid, 1 - w_mid - w_lo},
                              {TieBreak::Low, TieBreak::Low, TieBreak::Low}};
      const auto a = outcome_of_split(split, kM13, d);
      const auto b = outcome_of_signal(split_to_signal(split, mu0), kM13, d);
      CHECK_THAT(a.buyer_surplus, WithinAbs(b.buyer_surplus, 1e-9));
      CHECK_THAT(a.seller_profit, WithinAbs(b.seller_profit, 1e-9));
    }
  }
}

TEST_CASE("certificates respect the realization bound", "[persuasion][property]") {
  const std::vector<std::pair<Market, TypeDistribution>> cases{
      {kM13, TypeDistribution::uniform()},
      {kM23, TypeDistribution::uniform()},
      {kM13, TypeDistribution::atoms({{0.2, 0.5}, {0.8, 0.5}})},
      {kM13, TypeDistribution::piecewise_linear({{0, 0}, {0.3, 0.6}, {0.3, 0.7}, {1, 1}})}};
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [m, d] : cases) {
    const auto solved = implementable_set(m, d, 801, 360);
    for (const auto& c : solved.certificates) {
      CHECK(c.split.size() <= 2);
      c.split.check_plausible(d.mean());
      const auto o = outcome_of_split(c.split, m, d);
      CHECK_THAT(o.buyer_surplus, WithinAbs(c.outcome.buyer_surplus, 1e-12));
      CHECK_THAT(o.seller_profit, WithinAbs(c.outcome.seller_profit, 1e-12));
    }
    const auto& b = solved.set.boundary();
    const Eigen::Vector2d none = indirect_outcome(d.mean(), m, d).vec();
    for (int trial = 0; trial < 60; ++trial) {
      // random point inside: convex combination of N and two adjacent vertices
      const std::size_t i = static_cast<std::size_t>(unif(gen) * static_cast<double>(b.size())) % b.size();
      const double r1 = unif(gen);
      const double r2 = unif(gen) * (1 - r1);
      const Eigen::Vector2d p = (1 - r1 - r2) * none + r1 * b[i].vec() + r2 * b[(i + 1) % b.size()].vec();
      const WelfareOutcome target = WelfareOutcome::from(p);
      const BeliefSplit cert = certify_outcome(target, solved, m, d);
      // Three realizations need a connected graph; atoms can force a fourth.
      CHECK(cert.size() <= (d.atom_list().empty() ? 3u : 4u));
      cert.check_plausible(d.mean());
      const auto got = outcome_of_split(cert, m, d);
      CHECK_THAT(got.buyer_surplus, WithinAbs(target.buyer_surplus, 1e-8));
      CHECK_THAT(got.seller_profit, WithinAbs(target.seller_profit, 1e-8));
    }
  }
}

TEST_CASE("no-data outcome is always implementable", "[persuasion][property]") {
  for (const auto& d : {TypeDistribution::uniform(), TypeDistribution::atoms({{0.1, 0.4}, {0.7, 0.6}}),
                        TypeDistribution::piecewise_linear({{0, 0}, {0.5, 0.2}, {1, 1}})}) {
    for (const Market& m : {kM13, kM23, Market(1, 2)}) {
      const auto s = implementable_set(m, d, 401, 180);
      CHECK(s.set.signed_distance(indirect_outcome(d.mean(), m, d)) <= 1e-12);
    }
  }
}

TEST_CASE("refining the grid only grows the set", "[persuasion][property]") {
  const auto u = TypeDistribution::uniform();
  for (const Market& m : {kM13, kM23}) {
    const auto s1 = implementable_set(m, u, 51, 90);
    const auto s2 = implementable_set(m, u, 101, 180);
    const auto s3 = implementable_set(m, u, 201, 360);
    for (const auto& v : s1.set.boundary()) CHECK(s2.set.signed_distance(v) <= 1e-9);
    for (const auto& v : s2.set.boundary()) CHECK(s3.set.signed_distance(v) <= 1e-9);
    const double h12 = geometry::hausdorff(points_of(s1.set), points_of(s2.set), true, true, 1e-3);
    const double h23 = geometry::hausdorff(points_of(s2.set), points_of(s3.set), true, true, 1e-3);
    CHECK(h23 <= h12 + 1e-9);
  }
}
