#include <catch_amalgamated.hpp>

#include "support/rational.hpp"

#include "infodesign/beliefs.hpp"

using namespace infodesign;
using infodesign::test::Q;
using infodesign::test::q;
using Catch::Matchers::WithinAbs;

namespace {

// Independent route to θ̃: bisection on t(μ,θ) = L/H, using monotonicity in θ.
double threshold_by_bisection(double mu, const Market& mkt, double mu0) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (posterior_update(mu, mid, mu0) < mkt.ratio()) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("posterior_update examples", "[beliefs]") {
  CHECK_THAT(posterior_update(0.5, 0.7, 0.5), WithinAbs(0.7, 1e-15));
  CHECK(posterior_update(1.0, 0.3, 0.5) == 1.0);
  CHECK_THAT(posterior_update(0.8, 0.25, 0.5), WithinAbs(0.25 * 0.8 / (0.25 * 0.8 + 0.75 * 0.2), 1e-15));
  CHECK(posterior_update(q(4, 5), q(1, 4), q(1, 2)) == q(4, 7));
  // 0/0 corners return θ.
  CHECK(posterior_update(0.0, 1.0, 0.5) == 1.0);
  CHECK(posterior_update(1.0, 0.0, 0.5) == 0.0);
  CHECK_THROWS_AS(posterior_update(0.5, 0.5, 0.0), Error);
  CHECK_THROWS_AS(posterior_update(0.5, 0.5, 1.0), Error);
}

TEST_CASE("threshold_type examples", "[beliefs]") {
  const MarketT<Q> mq(q(1), q(3));
  CHECK(threshold_type(q(1, 2), mq, q(1, 2)) == q(1, 3));
  CHECK(threshold_type(q(1), mq, q(1, 2)) == q(0));
  CHECK(threshold_type(q(0), mq, q(1, 2)) == q(1));
  CHECK(threshold_type(q(1, 4), mq, q(1, 2)) == q(3, 5));
  const Market m(1, 3);
  CHECK_THAT(threshold_type(0.25, m, 0.5), WithinAbs(threshold_by_bisection(0.25, m, 0.5), 1e-12));
  CHECK_THROWS_AS(threshold_type(0.3, m, 1.0), Error);
}

TEST_CASE("optimal_price_binary examples", "[beliefs]") {
  const Market m(1, 3);
  CHECK(optimal_price_binary(0.9, m) == Price::High);
  CHECK(optimal_price_binary(0.9, m, TieBreak::High) == Price::High);
  CHECK(optimal_price_binary(1.0 / 3.0, m, TieBreak::Low) == Price::Low);
  CHECK(optimal_price_binary(0.2, m) == Price::Low);
  CHECK(optimal_price_binary(0.2, m, TieBreak::High) == Price::Low);
  const MarketT<Q> mq(q(1), q(3));
  CHECK(optimal_price_binary(q(1, 3), mq, TieBreak::High) == Price::High);
}

TEST_CASE("posterior is monotone in both arguments", "[beliefs][property]") {
  for (double mu0 : {0.2, 0.5, 0.8}) {
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double a = i / 100.0;
        const double b = j / 100.0;
        const double b2 = (j + 1) / 100.0;
        // in θ at fixed μ; strict when μ interior
        if (i > 0 && i < 100) {
          CHECK(posterior_update(a, b2, mu0) > posterior_update(a, b, mu0));
          CHECK(posterior_update(b2, a, mu0) >= posterior_update(b, a, mu0));
        }
        if (i > 0 && i < 100 && j > 0) {
          CHECK(posterior_update(b2, a, mu0) > posterior_update(b, a, mu0));
        }
      }
    }
  }
}

TEST_CASE("threshold type strictly decreases in the basic belief", "[beliefs][property]") {
  const Market m(1, 3);
  for (double mu0 : {0.3, 0.5, 0.7}) {
    double prev = threshold_type(0.001, m, mu0);
    for (int i = 2; i < 1000; ++i) {
      const double next = threshold_type(i / 1000.0, m, mu0);
      CHECK(next < prev);
      prev = next;
    }
  }
}

TEST_CASE("composition identity t(μ, θ̃(μ)) = L/H", "[beliefs][property]") {
  for (const Market& m : {Market(1, 3), Market(2, 3), Market(1, 2)}) {
    for (double mu0 : {0.25, 0.5, 0.9}) {
      for (int i = 1; i <= 1001; ++i) {
        const double mu = i / 1002.0;
        const double theta = threshold_type(mu, m, mu0);
        CHECK_THAT(posterior_update(mu, theta, mu0), WithinAbs(m.ratio(), 1e-12));
        CHECK_THAT(belief_at_threshold(theta, m, mu0), WithinAbs(mu, 1e-12));
      }
    }
  }
}

TEST_CASE("composition identity holds exactly over the rationals", "[beliefs][property]") {
  const MarketT<Q> m(q(2), q(7));
  for (long i = 1; i < 50; ++i) {
    const Q mu = q(i, 50);
    const Q mu0 = q(3, 11);
    const Q theta = threshold_type(mu, m, mu0);
    CHECK(posterior_update(mu, theta, mu0) == m.ratio());
    CHECK(belief_at_threshold(theta, m, mu0) == mu);
  }
}
