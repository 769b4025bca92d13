#include <catch_amalgamated.hpp>

#include "infodesign/mechanisms.hpp"
#include "infodesign/oracle.hpp"

using namespace infodesign;
using Catch::Matchers::WithinAbs;

namespace {

DirectMechanism make(std::vector<double> grid, std::vector<std::pair<double, double>> items) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(grid.size()));
  Eigen::VectorXd a(g.size());
  Eigen::VectorXd b(g.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    g(k) = grid[i];
    a(k) = items[i].first;
    b(k) = items[i].second;
  }
  return DirectMechanism(g, a, b);
}

// Independent relative-impact oracle: slopes of consecutive (α, β) chords.
bool relative_impact_brute(const DirectMechanism& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      for (std::size_t k = j + 1; k < m.size(); ++k) {
        const auto a = m.signal(i);
        const auto b = m.signal(j);
        const auto c = m.signal(k);
        if ((c.beta - b.beta) * (b.alpha - a.alpha) > (b.beta - a.beta) * (c.alpha - b.alpha) + 1e-12)
          return false;
      }
  return true;
}

const Market kMarket(1, 3);

}  // namespace

TEST_CASE("deviation profit examples", "[mechanisms]") {
  const auto mech = make({0.2, 0.5, 0.6}, {{0, 0}, {0, 1}, {1, 1}});
  CHECK_THAT(deviation_profit(0.2, 0, mech, kMarket), WithinAbs(1.0, 1e-15));
  CHECK_THAT(deviation_profit(0.2, 1, mech, kMarket), WithinAbs(1.4, 1e-15));
  CHECK_THAT(deviation_profit(0.6, 2, mech, kMarket), WithinAbs(1.8, 1e-15));
  CHECK_THROWS_AS(deviation_profit(0.2, 3, mech, kMarket), Error);
}

TEST_CASE("check_ic examples", "[mechanisms]") {
  const auto bad = check_ic(make({0.2, 0.6}, {{0, 0}, {0, 1}}), kMarket);
  CHECK_FALSE(bad.ok);
  CHECK_THAT(bad.worst_violation, WithinAbs(0.4, 1e-12));
  CHECK(bad.type_index == 0);
  CHECK(bad.report_index == 1);
  CHECK(check_ic(make({0.2, 0.6}, {{0, 0.5}, {1, 1}}), kMarket).ok);
  CHECK(check_ic(make({0.1, 0.4, 0.7}, {{0.3, 0.6}, {0.3, 0.6}, {0.3, 0.6}}), kMarket).ok);
}

TEST_CASE("obedience is a separate requirement", "[mechanisms]") {
  // Pairwise IC holds trivially, yet θ=0.9 prefers always pricing H.
  const auto constant = make({0.1, 0.9}, {{0, 0}, {0, 0}});
  CHECK(check_ic(constant, kMarket).ok);
  const auto ob = check_obedience(constant, kMarket);
  CHECK_FALSE(ob.ok);
  CHECK(ob.type_index == 1);
  CHECK(ob.deviation == Deviation::AlwaysHigh);
  CHECK(check_obedience(make({0.2, 0.6}, {{0, 0.5}, {1, 1}}), kMarket).ok);
}

TEST_CASE("check_structural examples", "[mechanisms]") {
  const auto two = check_structural(make({0.2, 0.6}, {{0, 0.5}, {1, 1}}));
  CHECK(two.monotone);
  CHECK(two.relative_impact);
  CHECK_FALSE(check_structural(make({0.2, 0.6}, {{0.5, 0.5}, {0, 1}})).monotone);
  const auto satisfied = make({0.1, 0.5, 0.9}, {{0, 0}, {0, 0.5}, {0.5, 0.6}});
  CHECK(relative_impact_brute(satisfied));
  CHECK(check_structural(satisfied).relative_impact);
  const auto violated = make({0.1, 0.5, 0.9}, {{0, 0}, {0.5, 0.6}, {0.5, 1}});
  CHECK_FALSE(relative_impact_brute(violated));
  const auto r = check_structural(violated);
  CHECK_FALSE(r.relative_impact);
  REQUIRE(r.relative_impact_witness.has_value());
  CHECK(*r.relative_impact_witness == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("mechanism constructor invariants", "[mechanisms]") {
  CHECK_THROWS_AS(make({0.2, 0.6}, {{0.5, 0.4}, {1, 1}}), Error);
  CHECK_THROWS_AS(make({0.6, 0.2}, {{0, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(DirectMechanism(Eigen::VectorXd(), Eigen::VectorXd(), Eigen::VectorXd()), Error);
}

TEST_CASE("build_public_signal examples", "[mechanisms]") {
  const auto constant = make({0.1, 0.5, 0.9}, {{0.2, 0.7}, {0.2, 0.7}, {0.2, 0.7}});
  const auto sig = build_public_signal(constant, kMarket);
  for (std::ptrdiff_t k = 0; k < 3; ++k) {
    CHECK(sig.pool_below(k).alpha == 0.2);
    CHECK(sig.pool_below(k).beta == 0.7);
  }
  CHECK(sig.satisfies_mlr());

  // Flagging rate 1/2 under uniform types: below 1/2 gets (0, 1/2), above gets (1, 1).
  const auto flag = make({0.25, 0.75}, {{0, 0.5}, {1, 1}});
  const auto fsig = build_public_signal(flag, kMarket);
  CHECK(fsig.cdf_low_at(0.25) == 0.0);
  CHECK(fsig.cdf_high_at(0.25) == 0.5);
  CHECK(fsig.cdf_high_at(0.5) == 0.5);
  CHECK(fsig.cdf_low_at(0.75) == 1.0);
  const auto finite = fsig.to_finite_signal();
  CHECK(finite.realization_count() == 3);

  CHECK_THROWS_AS(build_public_signal(make({0.2, 0.6}, {{0, 0}, {0, 1}}), kMarket), Error);
}

TEST_CASE("best-response thresholds on the two-type signal", "[mechanisms]") {
  const auto mech = make({0.2, 0.6}, {{0, 0.5}, {1, 1}});
  const auto sig = build_public_signal(mech, kMarket);
  const auto low = best_response_threshold(0.2, sig, kMarket);
  CHECK(low.knot == 0);
  CHECK(low.threshold == 0.2);
  const auto high = best_response_threshold(0.6, sig, kMarket);
  CHECK(high.knot == 1);
  CHECK(high.threshold == 0.6);
  // Flagging pays off for any θ > 0; only θ = 0 is indifferent and stays at L.
  CHECK(best_response_threshold(0.05, sig, kMarket).knot == 0);
  const auto none = best_response_threshold(0.0, sig, kMarket);
  CHECK(none.knot == -1);
  CHECK(none.pooled.alpha == 0.0);
  CHECK(none.pooled.beta == 0.0);
}

TEST_CASE("random IC mechanisms: structure, summation, replication", "[mechanisms][property]") {
  oracle::CounterRng rng(2024, 0);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    const auto mech = oracle::random_ic_mechanism(rng, n, kMarket);
    REQUIRE(check_ic(mech, kMarket).ok);
    REQUIRE(check_obedience(mech, kMarket).ok);
    const auto s = check_structural(mech);
    CHECK(s.monotone);
    CHECK(s.relative_impact);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto a = mech.signal(i);
      const auto b = mech.signal(i + 1);
      CHECK(b.alpha * kMarket.low() + b.beta * kMarket.spread() >=
            a.alpha * kMarket.low() + a.beta * kMarket.spread() - 1e-12);
    }
    Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
    w /= w.sum();
    const auto rep = check_replication(mech, w, kMarket, 1e-9);
    CHECK(rep.ok);
    const auto sig = build_public_signal(mech, kMarket);
    CHECK(sig.satisfies_mlr());
    // Pooling at each knot reproduces the type's own item.
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(sig.pool_below(static_cast<std::ptrdiff_t>(i)).alpha == mech.signal(i).alpha);
      CHECK(sig.pool_below(static_cast<std::ptrdiff_t>(i)).beta == mech.signal(i).beta);
    }
    ++checked;
  }
  CHECK(checked == 2000);
}

TEST_CASE("IC implies structure on arbitrary random mechanisms", "[mechanisms][property]") {
  oracle::CounterRng rng(99, 1);
  int passed_ic = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto mech = oracle::random_mechanism(rng, 2 + static_cast<std::size_t>(trial % 3));
    if (!check_ic(mech, kMarket).ok) continue;
    ++passed_ic;
    const auto s = check_structural(mech);
    CHECK(s.monotone);
    CHECK(s.relative_impact);
  }
  INFO("mechanisms passing IC: " << passed_ic);
  CHECK(passed_ic > 100);
}
