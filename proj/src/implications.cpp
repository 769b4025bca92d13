#include "infodesign/implications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infodesign/geometry.hpp"
#include "infodesign/payoffs.hpp"

namespace infodesign {

namespace {

constexpr double kConstraintSlack = 1e-9;

const SupportResult& certificate_for(const ImplementableSet& solved, const WelfareOutcome& v) {
  const SupportResult* best = &solved.certificates.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& c : solved.certificates) {
    const double d = (c.outcome.vec() - v.vec()).norm();
    if (d < best_d) {
      best_d = d;
      best = &c;
    }
  }
  return *best;
}

}  // namespace

ConstrainedOptimum constrained_seller_optimal(const ImplementableSet& solved, const Market& mkt,
                                              const TypeDistribution& dist) {
  const double u0 = baselines(mkt, dist).u_noinfo;
  const auto& poly = solved.set.boundary();
  ConstrainedOptimum best;
  double best_pi = -std::numeric_limits<double>::infinity();
  auto consider = [&](const WelfareOutcome& p, const BeliefSplit& cert) {
    if (p.seller_profit > best_pi) {
      best_pi = p.seller_profit;
      best = {p, cert};
    }
  };
  for (const auto& v : poly) {
    if (v.buyer_surplus >= u0 - kConstraintSlack) consider(v, certificate_for(solved, v).split);
  }
  for (std::size_t i = 0; i < poly.size() && poly.size() > 1; ++i) {
    const WelfareOutcome& a = poly[i];
    const WelfareOutcome& b = poly[(i + 1) % poly.size()];
    if ((a.buyer_surplus - u0) * (b.buyer_surplus - u0) >= 0.0) continue;
    const double t = (u0 - a.buyer_surplus) / (b.buyer_surplus - a.buyer_surplus);
    const WelfareOutcome p = WelfareOutcome::from((1.0 - t) * a.vec() + t * b.vec());
    consider(p, BeliefSplit::mix(certificate_for(solved, a).split, 1.0 - t,
                                 certificate_for(solved, b).split, t));
  }
  require(std::isfinite(best_pi), ErrorCode::InfeasibleConstraints,
          "no implementable outcome meets the buyer's participation bound");
  return best;
}

ConstrainedOptimum constrained_seller_optimal(const Market& mkt, const TypeDistribution& dist,
                                              const SolverSettings& settings) {
  return constrained_seller_optimal(
      implementable_set(mkt, dist, settings.grid, settings.directions), mkt, dist);
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::SellerWorseBuyerBetter: return "SellerWorseBuyerBetter";
    case Regime::SellerBetterBuyerWorse: return "SellerBetterBuyerWorse";
    case Regime::Boundary: return "Boundary";
  }
  return "Unknown";
}

ComparisonReport third_party_comparison(const Market& mkt, const TypeDistribution& dist,
                                        const SolverSettings& settings) {
  const double mu0 = dist.mean();
  require(std::abs(mu0 - mkt.ratio()) > 1e-12, ErrorCode::BoundaryCase,
          "prior mean equals L/H; the comparison has no strict regime");
  ComparisonReport r;
  r.uninformed =
      constrained_seller_optimal(mkt, TypeDistribution::point_mass(mu0), settings).outcome;
  r.informed = constrained_seller_optimal(mkt, dist, settings).outcome;
  const double d_pi = r.informed.seller_profit - r.uninformed.seller_profit;
  const double d_u = r.informed.buyer_surplus - r.uninformed.buyer_surplus;
  constexpr double eps = 1e-9;
  if (d_pi < -eps && d_u > eps) {
    r.regime = Regime::SellerWorseBuyerBetter;
  } else if (d_pi > eps && d_u < -eps) {
    r.regime = Regime::SellerBetterBuyerWorse;
  } else {
    r.regime = Regime::Boundary;
  }
  return r;
}

RentCheck efficiency_rent_check(const Market& mkt, const TypeDistribution& dist,
                                double efficient_tolerance, std::size_t grid,
                                bool include_full_information) {
  const GraphSample graph = sample_graph(mkt, dist, grid);
  const AggregateBaselines base = baselines(mkt, dist);
  const double mu0 = graph.prior();

  struct Node {
    double mu;
    TieBreak tie;
    WelfareOutcome outcome;
  };
  std::vector<Node> below;
  std::vector<Node> above;
  auto add = [&](double mu, TieBreak tie, const WelfareOutcome& o) {
    if (mu <= mu0) below.push_back({mu, tie, o});
    if (mu >= mu0) above.push_back({mu, tie, o});
  };
  for (std::size_t i = 0; i < graph.size(); ++i) add(graph.mus()[i], TieBreak::Low, graph.points()[i]);
  for (const auto& alt : graph.alternates()) add(graph.mus()[alt.index], TieBreak::High, alt.outcome);

  RentCheck best{std::numeric_limits<double>::infinity(), BeliefSplit::point(mu0),
                 FiniteSignal::uninformative(2), {}, 0};
  for (const Node& lo : below) {
    for (const Node& hi : above) {
      if (!include_full_information && lo.mu == 0.0 && hi.mu == 1.0) continue;
      if ((lo.mu == mu0) != (hi.mu == mu0)) continue;  // one-sided pairs are not plausible
      double w_lo = 1.0;
      if (hi.mu > lo.mu) w_lo = (hi.mu - mu0) / (hi.mu - lo.mu);
      const WelfareOutcome o = w_lo * lo.outcome + (1.0 - w_lo) * hi.outcome;
      if (o.buyer_surplus + o.seller_profit < base.w_bar - efficient_tolerance) continue;
      ++best.efficient_count;
      const double rent = o.seller_profit - base.pi_floor;
      if (rent < best.min_rent) {
        best.min_rent = rent;
        best.witness = hi.mu > lo.mu ? BeliefSplit{{lo.mu, hi.mu}, {w_lo, 1.0 - w_lo}, {lo.tie, hi.tie}}
                                     : BeliefSplit{{lo.mu}, {1.0}, {lo.tie}};
        best.witness_outcome = o;
      }
    }
  }
  require(best.efficient_count > 0, ErrorCode::NoEfficientSignalFound,
          "no searched signal reaches the efficient surplus");
  best.witness_signal = split_to_signal(best.witness, mu0);
  return best;
}

const char* to_string(Protocol protocol) noexcept {
  switch (protocol) {
    case Protocol::CheapTalk: return "cheap_talk";
    case Protocol::VoluntaryDisclosure: return "voluntary_disclosure";
    case Protocol::RequestConsentInformed: return "request_consent_informed";
    case Protocol::RequestConsentUninformed: return "request_consent_uninformed";
  }
  return "unknown";
}

ProtocolOutcome protocol_outcomes(Protocol protocol, const Market& mkt,
                                  const TypeDistribution& dist, const SolverSettings& settings) {
  ProtocolOutcome out;
  out.protocol = protocol;
  const bool full_support = dist.has_full_support();
  if (protocol == Protocol::CheapTalk) {
    require(full_support, ErrorCode::NotFullSupport,
            "cheap-talk outcomes are characterized only for full-support type distributions");
    out.points = {indirect_outcome(dist.mean(), mkt, dist)};
    return out;
  }
  if (!full_support) {
    out.warnings.push_back("type distribution lacks full support; characterization may not apply");
  }
  if (protocol == Protocol::VoluntaryDisclosure) {
    constexpr std::size_t samples = 401;
    for (std::size_t i = 0; i < samples; ++i) {
      const double alpha = static_cast<double>(i) / static_cast<double>(samples - 1);
      out.points.push_back(
          outcome_of_signal(FiniteSignal::from_binary(BinarySignal(alpha, 1.0)), mkt, dist));
    }
    return out;
  }
  const ImplementableSet solved = implementable_set(mkt, dist, settings.grid, settings.directions);
  if (protocol == Protocol::RequestConsentInformed) {
    out.points = solved.set.boundary();
    out.is_region = out.points.size() >= 3;
    return out;
  }
  const double u0 = baselines(mkt, dist).u_noinfo;
  geometry::Polyline poly;
  for (const auto& v : solved.set.boundary()) poly.push_back(v.vec());
  const geometry::Polyline clipped = geometry::convex_hull(geometry::clip_right_of(poly, u0 - kConstraintSlack));
  if (clipped.empty()) {
    out.points = {indirect_outcome(dist.mean(), mkt, dist)};
  } else {
    for (const auto& p : clipped) out.points.push_back(WelfareOutcome::from(p));
  }
  out.is_region = out.points.size() >= 3;
  return out;
}

std::vector<WelfareOutcome> left_chain(const ImplementableSet& solved, const Market& mkt,
                                       const TypeDistribution& dist) {
  const auto& poly = solved.set.boundary();
  const Eigen::Vector2d none = indirect_outcome(dist.mean(), mkt, dist).vec();
  std::size_t top = 0;
  std::size_t bottom = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& t = poly[top];
    if (p.seller_profit > t.seller_profit ||
        (p.seller_profit == t.seller_profit && p.buyer_surplus < t.buyer_surplus)) {
      top = i;
    }
    if ((p.vec() - none).norm() < (poly[bottom].vec() - none).norm()) bottom = i;
  }
  std::vector<WelfareOutcome> chain;
  for (std::size_t i = top;; i = (i + 1) % poly.size()) {
    chain.push_back(poly[i]);
    if (i == bottom) break;
  }
  return chain;
}

}  // namespace infodesign
