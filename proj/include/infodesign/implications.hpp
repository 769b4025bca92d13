#pragma once

#include <string>
#include <vector>

#include "infodesign/core.hpp"
#include "infodesign/persuasion.hpp"

namespace infodesign {

struct SolverSettings {
  std::size_t grid = 2001;
  std::size_t directions = 720;
};

struct ConstrainedOptimum {
  WelfareOutcome outcome;
  BeliefSplit certificate;
};

// Highest seller profit among implementable outcomes giving the buyer at
// least the no-data surplus.
ConstrainedOptimum constrained_seller_optimal(const Market& mkt, const TypeDistribution& dist,
                                              const SolverSettings& settings = {});
ConstrainedOptimum constrained_seller_optimal(const ImplementableSet& solved,
                                              const Market& mkt, const TypeDistribution& dist);

enum class Regime { SellerWorseBuyerBetter, SellerBetterBuyerWorse, Boundary };
const char* to_string(Regime regime) noexcept;

struct ComparisonReport {
  WelfareOutcome uninformed;  // seller type known to equal the prior mean
  WelfareOutcome informed;
  Regime regime = Regime::Boundary;
};

// Constrained seller optimum with a privately informed seller versus a
// seller whose type is pinned at E[θ].
ComparisonReport third_party_comparison(const Market& mkt, const TypeDistribution& dist,
                                        const SolverSettings& settings = {});

struct RentCheck {
  double min_rent = 0.0;
  BeliefSplit witness;
  FiniteSignal witness_signal;
  WelfareOutcome witness_outcome;
  std::size_t efficient_count = 0;
};

// Smallest seller rent Π − Π̲ among public signals (two-point splits on the
// graph grid, plus full information) whose total surplus is within
// `efficient_tolerance` of W̄.
RentCheck efficiency_rent_check(const Market& mkt, const TypeDistribution& dist,
                                double efficient_tolerance = 1e-6, std::size_t grid = 401,
                                bool include_full_information = true);

enum class Protocol { CheapTalk, VoluntaryDisclosure, RequestConsentInformed, RequestConsentUninformed };
const char* to_string(Protocol protocol) noexcept;

struct ProtocolOutcome {
  Protocol protocol = Protocol::CheapTalk;
  // Single point, curve, or closed CCW region boundary.
  std::vector<WelfareOutcome> points;
  bool is_region = false;
  std::vector<std::string> warnings;
};

ProtocolOutcome protocol_outcomes(Protocol protocol, const Market& mkt,
                                  const TypeDistribution& dist,
                                  const SolverSettings& settings = {});

// Vertices of the solved set from the full-information end down to the
// no-data point along the side with less buyer surplus.
std::vector<WelfareOutcome> left_chain(const ImplementableSet& solved, const Market& mkt,
                                       const TypeDistribution& dist);

}  // namespace infodesign
