#pragma once

#include "infodesign/beliefs.hpp"
#include "infodesign/core.hpp"

namespace infodesign {

struct AggregateBaselines {
  double pi_floor = 0.0;  // uniform-pricing profit with no data
  double w_bar = 0.0;     // efficient total surplus
  double u_noinfo = 0.0;  // buyer surplus with no data
};

AggregateBaselines baselines(const Market& mkt, const TypeDistribution& dist);

// Probability type theta assigns to a realization with basic belief mu,
// relative to the basic prior's probability of that realization.
double realization_weight(double mu, double theta, double mu0);

// Atoms within this distance of the threshold type count as indifferent.
inline constexpr double kAtomTieTolerance = 1e-12;

// True when an atom of F sits at the threshold type, so the tie-break
// changes the outcome at mu.
bool atom_at_threshold(double mu, const Market& mkt, const TypeDistribution& dist);

// Aggregate (U(mu), Π(mu)) per unit of realization probability.
WelfareOutcome indirect_outcome(double mu, const Market& mkt, const TypeDistribution& dist,
                                TieBreak tie = TieBreak::Low);
double indirect_buyer_surplus(double mu, const Market& mkt, const TypeDistribution& dist,
                              TieBreak tie = TieBreak::Low);
double indirect_seller_profit(double mu, const Market& mkt, const TypeDistribution& dist,
                              TieBreak tie = TieBreak::Low);

// Outcomes reachable when the seller type is observed: (0, W̄), (0, Π̲), (W̄−Π̲, Π̲).
OutcomeSet observable_triangle(const Market& mkt, const TypeDistribution& dist);

}  // namespace infodesign
