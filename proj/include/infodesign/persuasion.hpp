#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "infodesign/beliefs.hpp"
#include "infodesign/core.hpp"

namespace infodesign {

// Graph of mu -> (U(mu), Π(mu)). Beliefs where an atom sits at the threshold
// type carry a second point priced with the High tie-break.
class GraphSample {
 public:
  struct Alternate {
    std::size_t index;
    WelfareOutcome outcome;
  };

  GraphSample(std::vector<double> mus, std::vector<WelfareOutcome> points,
              std::vector<Alternate> alternates, double prior);

  std::size_t size() const { return mus_.size(); }
  const std::vector<double>& mus() const { return mus_; }
  const std::vector<WelfareOutcome>& points() const { return points_; }
  const std::vector<Alternate>& alternates() const { return alternates_; }
  double prior() const { return prior_; }
  std::size_t prior_index() const { return prior_index_; }

 private:
  std::vector<double> mus_;
  std::vector<WelfareOutcome> points_;
  std::vector<Alternate> alternates_;
  double prior_;
  std::size_t prior_index_ = 0;
};

GraphSample sample_graph(const Market& mkt, const TypeDistribution& dist, std::size_t n);

// Distribution over basic beliefs; `ties` records how atoms at the threshold
// type are priced at each support point.
struct BeliefSplit {
  std::vector<double> support;
  std::vector<double> weights;
  std::vector<TieBreak> ties;

  std::size_t size() const { return support.size(); }
  double mean() const;
  void check_plausible(double mu0, double tol = 1e-9) const;
  static BeliefSplit point(double mu);
  // Weighted union, merging equal beliefs with equal ties.
  static BeliefSplit mix(const BeliefSplit& a, double wa, const BeliefSplit& b, double wb);
};

WelfareOutcome outcome_of_split(const BeliefSplit& split, const Market& mkt,
                                const TypeDistribution& dist);

struct SupportResult {
  Eigen::Vector2d direction;
  double value = 0.0;
  BeliefSplit split;
  WelfareOutcome outcome;
};

SupportResult support_value(const Eigen::Vector2d& lambda, const GraphSample& graph);
SupportResult support_value(const Eigen::Vector2d& lambda, const Market& mkt,
                            const TypeDistribution& dist, std::size_t grid);

struct ImplementableSet {
  OutcomeSet set;
  // One per direction, then one per boundary vertex (zero direction).
  std::vector<SupportResult> certificates;
};

ImplementableSet implementable_set(const Market& mkt, const TypeDistribution& dist,
                                   std::size_t grid, std::size_t directions);

FiniteSignal split_to_signal(const BeliefSplit& split, double mu0);
WelfareOutcome outcome_of_signal(const FiniteSignal& sig, const Market& mkt,
                                 const TypeDistribution& dist);

// Bayes-plausible split whose outcome is `target`, built from the no-data
// point and a two-point boundary split on the ray through `target`. Falls
// back to mixing neighbouring certificates (more support points) when the
// graph is discontinuous.
BeliefSplit certify_outcome(const WelfareOutcome& target, const ImplementableSet& solved,
                            const Market& mkt, const TypeDistribution& dist);

}  // namespace infodesign
