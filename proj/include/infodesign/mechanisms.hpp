#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "infodesign/core.hpp"

namespace infodesign {

// Menu of binary signals indexed by a finite type grid; realization s_H
// recommends price H.
class DirectMechanism {
 public:
  DirectMechanism(Eigen::VectorXd grid, Eigen::VectorXd alpha, Eigen::VectorXd beta);

  std::size_t size() const { return static_cast<std::size_t>(grid_.size()); }
  const Eigen::VectorXd& grid() const { return grid_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Eigen::VectorXd& beta() const { return beta_; }
  double theta(std::size_t i) const { return grid_(static_cast<Eigen::Index>(i)); }
  BinarySignal signal(std::size_t i) const;

 private:
  Eigen::VectorXd grid_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;
};

// Profit of type theta that follows the recommendations of `s`.
double obedient_profit(double theta, const BinarySignal& s, const Market& mkt);

double deviation_profit(double theta, std::size_t report, const DirectMechanism& mech,
                        const Market& mkt);

inline constexpr double kIcTolerance = 1e-9;

struct IcReport {
  bool ok = true;
  double worst_violation = 0.0;
  std::size_t type_index = 0;
  std::size_t report_index = 0;
};

// Pairwise truth-telling.
IcReport check_ic(const DirectMechanism& mech, const Market& mkt);

enum class Deviation { AlwaysLow, AlwaysHigh };

struct ObedienceReport {
  bool ok = true;
  double worst_violation = 0.0;
  std::size_t type_index = 0;
  Deviation deviation = Deviation::AlwaysLow;
};

// Following recommendations beats ignoring them.
ObedienceReport check_obedience(const DirectMechanism& mech, const Market& mkt);

struct StructuralReport {
  bool monotone = true;
  bool relative_impact = true;
  std::optional<std::pair<std::size_t, std::size_t>> monotone_witness;
  std::optional<std::array<std::size_t, 3>> relative_impact_witness;
  double worst_relative_impact = 0.0;
};

StructuralReport check_structural(const DirectMechanism& mech);

// Realization space [0,1]; CDFs are right-continuous steps at the knots and
// jump to 1 at s = 1.
class PublicSignalCdf {
 public:
  PublicSignalCdf(Eigen::VectorXd knots, Eigen::VectorXd cdf_low, Eigen::VectorXd cdf_high);

  std::size_t size() const { return static_cast<std::size_t>(knots_.size()); }
  const Eigen::VectorXd& knots() const { return knots_; }
  const Eigen::VectorXd& cdf_low() const { return cdf_low_; }
  const Eigen::VectorXd& cdf_high() const { return cdf_high_; }
  double cdf_low_at(double s) const;
  double cdf_high_at(double s) const;

  // Pooling realizations at or below knot k (k = size() pools everything,
  // k = -1 pools nothing).
  BinarySignal pool_below(std::ptrdiff_t k) const;

  // One realization per knot plus the terminal one.
  FiniteSignal to_finite_signal() const;
  bool satisfies_mlr(double tol = 1e-12) const;

 private:
  Eigen::VectorXd knots_;
  Eigen::VectorXd cdf_low_;
  Eigen::VectorXd cdf_high_;
};

PublicSignalCdf build_public_signal(const DirectMechanism& mech, const Market& mkt);

struct ThresholdChoice {
  // -1: never price H; size(): always price H; otherwise the knot index.
  std::ptrdiff_t knot = -1;
  double threshold = 0.0;
  BinarySignal pooled = BinarySignal::uninformative();
  double profit = 0.0;
};

ThresholdChoice best_response_threshold(double theta, const PublicSignalCdf& sig,
                                        const Market& mkt);

// Ex ante outcome for one type that obeys `s`.
WelfareOutcome type_outcome(double theta, const BinarySignal& s, const Market& mkt);
WelfareOutcome mechanism_outcome(const DirectMechanism& mech, const Eigen::VectorXd& weights,
                                 const Market& mkt);

struct ReplicationReport {
  bool ok = true;
  double max_signal_gap = 0.0;
  double outcome_gap = 0.0;
  WelfareOutcome direct;
  WelfareOutcome replicated;
};

// Compares each type's menu item with the pooled public signal it picks.
ReplicationReport check_replication(const DirectMechanism& mech, const Eigen::VectorXd& weights,
                                    const Market& mkt, double tol = 1e-9);

}  // namespace infodesign
