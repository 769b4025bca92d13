#include "infodesign/payoffs.hpp"

#include <cmath>

namespace infodesign {

namespace {

// Mass and first moment of F on either side of a cut point.
struct SideMoments {
  double mass_low = 0.0;
  double moment_low = 0.0;
  double mass_high = 0.0;
  double moment_high = 0.0;
};

SideMoments split_at(const TypeDistribution& dist, double cut, TieBreak tie) {
  SideMoments s;
  for (const auto& p : dist.pieces()) {
    const double lo_end = std::min(p.hi, std::max(p.lo, cut));
    s.mass_low += p.density * (lo_end - p.lo);
    s.moment_low += p.density * 0.5 * (lo_end - p.lo) * (lo_end + p.lo);
    s.mass_high += p.density * (p.hi - lo_end);
    s.moment_high += p.density * 0.5 * (p.hi - lo_end) * (p.hi + lo_end);
  }
  for (const auto& a : dist.atom_list()) {
    const bool at_cut = std::abs(a.theta - cut) <= kAtomTieTolerance;
    const bool low = at_cut ? tie == TieBreak::Low : a.theta < cut;
    if (low) {
      s.mass_low += a.weight;
      s.moment_low += a.weight * a.theta;
    } else {
      s.mass_high += a.weight;
      s.moment_high += a.weight * a.theta;
    }
  }
  return s;
}

void require_belief(double mu) {
  require(mu >= 0.0 && mu <= 1.0, ErrorCode::InvalidArgument, "basic belief must lie in [0,1]");
}

}  // namespace

AggregateBaselines baselines(const Market& mkt, const TypeDistribution& dist) {
  const SideMoments s = split_at(dist, mkt.ratio(), TieBreak::Low);
  AggregateBaselines b;
  b.pi_floor = mkt.low() * s.mass_low + mkt.high() * s.moment_high;
  b.w_bar = mkt.low() + mkt.spread() * dist.mean();
  b.u_noinfo = mkt.spread() * s.moment_low;
  return b;
}

double realization_weight(double mu, double theta, double mu0) {
  detail::require_interior_prior(mu0);
  return theta * mu / mu0 + (1.0 - theta) * (1.0 - mu) / (1.0 - mu0);
}

bool atom_at_threshold(double mu, const Market& mkt, const TypeDistribution& dist) {
  const double mu0 = dist.mean();
  const double cut = threshold_type(mu, mkt, mu0);
  for (const auto& a : dist.atom_list()) {
    if (std::abs(a.theta - cut) <= kAtomTieTolerance) return true;
  }
  return false;
}

// Type θ reaches basic belief mu with relative probability g(mu, θ); types
// at or below the threshold price L, the rest price H.
WelfareOutcome indirect_outcome(double mu, const Market& mkt, const TypeDistribution& dist,
                                TieBreak tie) {
  require_belief(mu);
  const double mu0 = dist.mean();
  const double cut = threshold_type(mu, mkt, mu0);
  const SideMoments s = split_at(dist, cut, tie);
  const double high_scale = mu / mu0;
  const double low_scale = (1.0 - mu) / (1.0 - mu0);
  WelfareOutcome out;
  out.buyer_surplus = mkt.spread() * high_scale * s.moment_low;
  out.seller_profit =
      mkt.low() * (high_scale * s.moment_low + low_scale * (s.mass_low - s.moment_low)) +
      mkt.high() * high_scale * s.moment_high;
  return out;
}

double indirect_buyer_surplus(double mu, const Market& mkt, const TypeDistribution& dist,
                              TieBreak tie) {
  return indirect_outcome(mu, mkt, dist, tie).buyer_surplus;
}

double indirect_seller_profit(double mu, const Market& mkt, const TypeDistribution& dist,
                              TieBreak tie) {
  return indirect_outcome(mu, mkt, dist, tie).seller_profit;
}

OutcomeSet observable_triangle(const Market& mkt, const TypeDistribution& dist) {
  const AggregateBaselines b = baselines(mkt, dist);
  return OutcomeSet({{0.0, b.w_bar}, {0.0, b.pi_floor}, {b.w_bar - b.pi_floor, b.pi_floor}},
                    dist.mean());
}

}  // namespace infodesign
