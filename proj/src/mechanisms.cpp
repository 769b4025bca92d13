#include "infodesign/mechanisms.hpp"

#include <algorithm>
#include <cmath>

namespace infodesign {

namespace {

constexpr double kOrderTolerance = 1e-12;

void require_probabilities(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    require(v(i) >= 0.0 && v(i) <= 1.0, ErrorCode::InvalidArgument, what);
  }
}

void require_increasing(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    require(v(i - 1) < v(i), ErrorCode::InvalidArgument, what);
  }
}

void require_weights(const Eigen::VectorXd& w, std::size_t n) {
  require(static_cast<std::size_t>(w.size()) == n, ErrorCode::InvalidArgument,
          "one weight per type required");
  require((w.array() >= 0.0).all() && std::abs(w.sum() - 1.0) <= 1e-12,
          ErrorCode::InvalidArgument, "weights must be a probability vector");
}

}  // namespace

DirectMechanism::DirectMechanism(Eigen::VectorXd grid, Eigen::VectorXd alpha, Eigen::VectorXd beta)
    : grid_(std::move(grid)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
  require(grid_.size() > 0, ErrorCode::InvalidArgument, "mechanism grid is empty");
  require(alpha_.size() == grid_.size() && beta_.size() == grid_.size(),
          ErrorCode::InvalidArgument, "alpha and beta must match the grid");
  require_probabilities(grid_, "types must lie in [0,1]");
  require_probabilities(alpha_, "alpha must lie in [0,1]");
  require_probabilities(beta_, "beta must lie in [0,1]");
  require_increasing(grid_, "type grid must be strictly increasing");
  for (Eigen::Index i = 0; i < grid_.size(); ++i) {
    require(beta_(i) >= alpha_(i) - kOrderTolerance, ErrorCode::InvalidArgument,
            "each menu item needs beta >= alpha");
  }
}

BinarySignal DirectMechanism::signal(std::size_t i) const {
  const auto k = static_cast<Eigen::Index>(i);
  return {alpha_(k), std::max(alpha_(k), beta_(k))};
}

double obedient_profit(double theta, const BinarySignal& s, const Market& mkt) {
  return (1.0 - s.alpha) * mkt.low() + theta * (s.alpha * mkt.low() + s.beta * mkt.spread());
}

double deviation_profit(double theta, std::size_t report, const DirectMechanism& mech,
                        const Market& mkt) {
  require(report < mech.size(), ErrorCode::InvalidArgument, "report out of range");
  return obedient_profit(theta, mech.signal(report), mkt);
}

IcReport check_ic(const DirectMechanism& mech, const Market& mkt) {
  IcReport r;
  for (std::size_t i = 0; i < mech.size(); ++i) {
    const double own = deviation_profit(mech.theta(i), i, mech, mkt);
    for (std::size_t j = 0; j < mech.size(); ++j) {
      const double gain = deviation_profit(mech.theta(i), j, mech, mkt) - own;
      if (gain > r.worst_violation) {
        r.worst_violation = gain;
        r.type_index = i;
        r.report_index = j;
      }
    }
  }
  r.ok = r.worst_violation <= kIcTolerance;
  return r;
}

ObedienceReport check_obedience(const DirectMechanism& mech, const Market& mkt) {
  ObedienceReport r;
  for (std::size_t i = 0; i < mech.size(); ++i) {
    const double theta = mech.theta(i);
    const double own = deviation_profit(theta, i, mech, mkt);
    const double low_gain = mkt.low() - own;
    const double high_gain = theta * mkt.high() - own;
    if (low_gain > r.worst_violation) {
      r.worst_violation = low_gain;
      r.type_index = i;
      r.deviation = Deviation::AlwaysLow;
    }
    if (high_gain > r.worst_violation) {
      r.worst_violation = high_gain;
      r.type_index = i;
      r.deviation = Deviation::AlwaysHigh;
    }
  }
  r.ok = r.worst_violation <= kIcTolerance;
  return r;
}

StructuralReport check_structural(const DirectMechanism& mech) {
  StructuralReport r;
  const auto& a = mech.alpha();
  const auto& b = mech.beta();
  const auto n = static_cast<Eigen::Index>(mech.size());
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (a(i + 1) < a(i) - kOrderTolerance || b(i + 1) < b(i) - kOrderTolerance) {
      r.monotone = false;
      r.monotone_witness = std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1));
      break;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      for (Eigen::Index k = j + 1; k < n; ++k) {
        const double excess = (b(k) - b(j)) * (a(j) - a(i)) - (b(j) - b(i)) * (a(k) - a(j));
        if (excess > r.worst_relative_impact) {
          r.worst_relative_impact = excess;
          if (excess > kOrderTolerance) {
            r.relative_impact = false;
            r.relative_impact_witness = std::array<std::size_t, 3>{
                static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)};
          }
        }
      }
    }
  }
  return r;
}

PublicSignalCdf::PublicSignalCdf(Eigen::VectorXd knots, Eigen::VectorXd cdf_low,
                                 Eigen::VectorXd cdf_high)
    : knots_(std::move(knots)), cdf_low_(std::move(cdf_low)), cdf_high_(std::move(cdf_high)) {
  require(knots_.size() > 0 && cdf_low_.size() == knots_.size() &&
              cdf_high_.size() == knots_.size(),
          ErrorCode::InvalidArgument, "public signal needs matching knots and CDF values");
  require_probabilities(knots_, "knots must lie in [0,1]");
  require_probabilities(cdf_low_, "CDF values must lie in [0,1]");
  require_probabilities(cdf_high_, "CDF values must lie in [0,1]");
  require_increasing(knots_, "knots must be strictly increasing");
  for (Eigen::Index i = 1; i < knots_.size(); ++i) {
    require(cdf_low_(i) >= cdf_low_(i - 1) - kOrderTolerance &&
                cdf_high_(i) >= cdf_high_(i - 1) - kOrderTolerance,
            ErrorCode::InvalidArgument, "CDFs must be nondecreasing");
  }
}

namespace {
double step_at(const Eigen::VectorXd& knots, const Eigen::VectorXd& values, double s) {
  if (s >= 1.0) return 1.0;
  double v = 0.0;
  for (Eigen::Index i = 0; i < knots.size() && knots(i) <= s; ++i) v = values(i);
  return v;
}
}  // namespace

double PublicSignalCdf::cdf_low_at(double s) const { return step_at(knots_, cdf_low_, s); }
double PublicSignalCdf::cdf_high_at(double s) const { return step_at(knots_, cdf_high_, s); }

BinarySignal PublicSignalCdf::pool_below(std::ptrdiff_t k) const {
  if (k < 0) return BinarySignal::uninformative();
  if (static_cast<std::size_t>(k) >= size()) return {1.0, 1.0};
  const double a = cdf_low_(k);
  return {a, std::max(a, cdf_high_(k))};
}

FiniteSignal PublicSignalCdf::to_finite_signal() const {
  const Eigen::Index m = knots_.size();
  FiniteSignal::Matrix lik(2, m + 1);
  double prev_low = 0.0;
  double prev_high = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    lik(0, i) = std::max(0.0, cdf_low_(i) - prev_low);
    lik(1, i) = std::max(0.0, cdf_high_(i) - prev_high);
    prev_low = cdf_low_(i);
    prev_high = cdf_high_(i);
  }
  lik(0, m) = 1.0 - prev_low;
  lik(1, m) = 1.0 - prev_high;
  return FiniteSignal(std::move(lik));
}

bool PublicSignalCdf::satisfies_mlr(double tol) const {
  const Eigen::Index n = knots_.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      for (Eigen::Index k = j + 1; k < n; ++k) {
        const double lhs = (cdf_low_(k) - cdf_low_(j)) * (cdf_high_(j) - cdf_high_(i));
        const double rhs = (cdf_low_(j) - cdf_low_(i)) * (cdf_high_(k) - cdf_high_(j));
        if (lhs < rhs - tol) return false;
      }
    }
  }
  return true;
}

PublicSignalCdf build_public_signal(const DirectMechanism& mech, const Market& mkt) {
  const StructuralReport s = check_structural(mech);
  require(check_ic(mech, mkt).ok && s.monotone && s.relative_impact,
          ErrorCode::NotIncentiveCompatible, "mechanism is not incentive compatible");
  return PublicSignalCdf(mech.grid(), mech.alpha(), mech.beta());
}

// Pricing H below the threshold knot and L above it; among equally good
// thresholds the one with fewer high prices wins.
ThresholdChoice best_response_threshold(double theta, const PublicSignalCdf& sig,
                                        const Market& mkt) {
  ThresholdChoice best;
  best.profit = obedient_profit(theta, best.pooled, mkt);
  const auto m = static_cast<std::ptrdiff_t>(sig.size());
  for (std::ptrdiff_t k = 0; k <= m; ++k) {
    const BinarySignal pooled = sig.pool_below(k);
    const double profit = obedient_profit(theta, pooled, mkt);
    if (profit > best.profit + kOrderTolerance) {
      best.knot = k;
      best.threshold = k < m ? sig.knots()(k) : 1.0;
      best.pooled = pooled;
      best.profit = profit;
    }
  }
  return best;
}

WelfareOutcome type_outcome(double theta, const BinarySignal& s, const Market& mkt) {
  return {theta * (1.0 - s.beta) * mkt.spread(), obedient_profit(theta, s, mkt)};
}

WelfareOutcome mechanism_outcome(const DirectMechanism& mech, const Eigen::VectorXd& weights,
                                 const Market& mkt) {
  require_weights(weights, mech.size());
  WelfareOutcome total;
  for (std::size_t i = 0; i < mech.size(); ++i) {
    total = total + weights(static_cast<Eigen::Index>(i)) * type_outcome(mech.theta(i), mech.signal(i), mkt);
  }
  return total;
}

ReplicationReport check_replication(const DirectMechanism& mech, const Eigen::VectorXd& weights,
                                    const Market& mkt, double tol) {
  require_weights(weights, mech.size());
  const PublicSignalCdf sig = build_public_signal(mech, mkt);
  ReplicationReport r;
  r.direct = mechanism_outcome(mech, weights, mkt);
  for (std::size_t i = 0; i < mech.size(); ++i) {
    const ThresholdChoice choice = best_response_threshold(mech.theta(i), sig, mkt);
    const BinarySignal own = mech.signal(i);
    r.max_signal_gap = std::max({r.max_signal_gap, std::abs(choice.pooled.alpha - own.alpha),
                                 std::abs(choice.pooled.beta - own.beta)});
    r.replicated = r.replicated +
                   weights(static_cast<Eigen::Index>(i)) * type_outcome(mech.theta(i), choice.pooled, mkt);
  }
  r.outcome_gap = (r.direct.vec() - r.replicated.vec()).cwiseAbs().maxCoeff();
  r.ok = r.max_signal_gap <= tol && r.outcome_gap <= tol;
  return r;
}

}  // namespace infodesign
