#include "infodesign/persuasion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "infodesign/geometry.hpp"
#include "infodesign/payoffs.hpp"

namespace infodesign {

GraphSample::GraphSample(std::vector<double> mus, std::vector<WelfareOutcome> points,
                         std::vector<Alternate> alternates, double prior)
    : mus_(std::move(mus)), points_(std::move(points)), alternates_(std::move(alternates)),
      prior_(prior) {
  require(mus_.size() == points_.size() && !mus_.empty(), ErrorCode::InvalidArgument,
          "graph beliefs and points must match");
  for (std::size_t i = 1; i < mus_.size(); ++i) {
    require(mus_[i - 1] < mus_[i], ErrorCode::InvalidArgument, "graph grid must be increasing");
  }
  const auto it = std::find(mus_.begin(), mus_.end(), prior_);
  require(it != mus_.end(), ErrorCode::InvalidArgument, "graph grid must contain the prior");
  prior_index_ = static_cast<std::size_t>(it - mus_.begin());
}

GraphSample sample_graph(const Market& mkt, const TypeDistribution& dist, std::size_t n) {
  require(n >= 3, ErrorCode::InvalidArgument, "graph needs at least three beliefs");
  const double mu0 = dist.mean();
  detail::require_interior_prior(mu0);

  // Exact beliefs (prior, kinks) win over nearby grid points.
  struct Candidate {
    double mu;
    bool exact;
  };
  std::vector<Candidate> cands;
  cands.reserve(n + dist.atom_list().size() + dist.knots().size() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    cands.push_back({static_cast<double>(i) / static_cast<double>(n - 1), i == 0 || i + 1 == n});
  }
  cands.push_back({mu0, true});
  auto add_kink = [&](double theta) {
    if (theta > 0.0 && theta < 1.0) cands.push_back({belief_at_threshold(theta, mkt, mu0), true});
  };
  for (const auto& a : dist.atom_list()) add_kink(a.theta);
  for (const auto& k : dist.knots()) add_kink(k.x);
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.mu < b.mu; });

  std::vector<double> mus;
  std::vector<bool> exact;
  for (const Candidate& c : cands) {
    if (!mus.empty() && c.mu - mus.back() <= 1e-13) {
      if (c.exact && !exact.back()) mus.back() = c.mu;
      exact.back() = exact.back() || c.exact;
      continue;
    }
    mus.push_back(c.mu);
    exact.push_back(c.exact);
  }
  // Keep the prior bit-exact even if a kink landed within rounding of it.
  for (double& m : mus) {
    if (std::abs(m - mu0) <= 1e-13) m = mu0;
  }

  std::vector<WelfareOutcome> points(mus.size());
  parallel_for(mus.size(), [&](std::size_t i) { points[i] = indirect_outcome(mus[i], mkt, dist); });
  std::vector<GraphSample::Alternate> alternates;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    if (atom_at_threshold(mus[i], mkt, dist)) {
      alternates.push_back({i, indirect_outcome(mus[i], mkt, dist, TieBreak::High)});
    }
  }
  return GraphSample(std::move(mus), std::move(points), std::move(alternates), mu0);
}

double BeliefSplit::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) m += weights[i] * support[i];
  return m;
}

void BeliefSplit::check_plausible(double mu0, double tol) const {
  require(!support.empty() && weights.size() == support.size() && ties.size() == support.size(),
          ErrorCode::NotBayesPlausible, "split needs one weight and tie per belief");
  double total = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    require(support[i] >= 0.0 && support[i] <= 1.0 && weights[i] >= 0.0,
            ErrorCode::NotBayesPlausible, "split beliefs and weights must be probabilities");
    total += weights[i];
  }
  require(std::abs(total - 1.0) <= tol, ErrorCode::NotBayesPlausible, "split weights must sum to 1");
  require(std::abs(mean() - mu0) <= tol, ErrorCode::NotBayesPlausible,
          "split must average to the prior");
}

BeliefSplit BeliefSplit::point(double mu) { return {{mu}, {1.0}, {TieBreak::Low}}; }

BeliefSplit BeliefSplit::mix(const BeliefSplit& a, double wa, const BeliefSplit& b, double wb) {
  BeliefSplit out;
  auto add = [&](const BeliefSplit& s, double scale) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double w = scale * s.weights[i];
      if (w <= 0.0) continue;
      bool merged = false;
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (out.support[j] == s.support[i] && out.ties[j] == s.ties[i]) {
          out.weights[j] += w;
          merged = true;
          break;
        }
      }
      if (!merged) {
        out.support.push_back(s.support[i]);
        out.weights.push_back(w);
        out.ties.push_back(s.ties[i]);
      }
    }
  };
  add(a, wa);
  add(b, wb);
  return out;
}

WelfareOutcome outcome_of_split(const BeliefSplit& split, const Market& mkt,
                                const TypeDistribution& dist) {
  split.check_plausible(dist.mean());
  WelfareOutcome total;
  for (std::size_t i = 0; i < split.size(); ++i) {
    total = total + split.weights[i] * indirect_outcome(split.support[i], mkt, dist, split.ties[i]);
  }
  return total;
}

namespace {

BeliefSplit two_point(double lo, TieBreak lo_tie, double hi, TieBreak hi_tie, double mu0) {
  if (hi - lo <= 1e-15) return BeliefSplit::point(mu0);
  const double w_lo = (hi - mu0) / (hi - lo);
  BeliefSplit s{{lo, hi}, {w_lo, 1.0 - w_lo}, {lo_tie, hi_tie}};
  if (s.weights[0] <= 0.0) return {{hi}, {1.0}, {hi_tie}};
  if (s.weights[1] <= 0.0) return {{lo}, {1.0}, {lo_tie}};
  return s;
}

}  // namespace

// Concavifies μ ↦ λ·(U(μ), Π(μ)) over the sampled beliefs and reads off the
// envelope at the prior.
SupportResult support_value(const Eigen::Vector2d& lambda, const GraphSample& graph) {
  require(lambda.squaredNorm() > 0.0, ErrorCode::InvalidArgument, "direction must be nonzero");
  const std::size_t n = graph.size();
  std::vector<double> w(n);
  std::vector<TieBreak> tie(n, TieBreak::Low);
  std::vector<WelfareOutcome> pts = graph.points();
  for (std::size_t i = 0; i < n; ++i) w[i] = lambda.dot(pts[i].vec());
  for (const auto& alt : graph.alternates()) {
    const double v = lambda.dot(alt.outcome.vec());
    if (v > w[alt.index]) {
      w[alt.index] = v;
      tie[alt.index] = TieBreak::High;
      pts[alt.index] = alt.outcome;
    }
  }

  const auto& mus = graph.mus();
  std::vector<std::size_t> hull;
  hull.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double turn = (mus[b] - mus[a]) * (w[i] - w[a]) - (w[b] - w[a]) * (mus[i] - mus[a]);
      if (turn < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }

  const double mu0 = graph.prior();
  SupportResult r;
  r.direction = lambda;
  std::size_t j = 0;
  while (j + 1 < hull.size() && mus[hull[j + 1]] <= mu0) ++j;
  const std::size_t lo = hull[j];
  if (mus[lo] == mu0 || j + 1 == hull.size()) {
    r.split = {{mus[lo]}, {1.0}, {tie[lo]}};
  } else {
    const std::size_t hi = hull[j + 1];
    r.split = two_point(mus[lo], tie[lo], mus[hi], tie[hi], mu0);
  }
  for (std::size_t k = 0; k < r.split.size(); ++k) {
    const auto idx = static_cast<std::size_t>(
        std::lower_bound(mus.begin(), mus.end(), r.split.support[k]) - mus.begin());
    r.outcome = r.outcome + r.split.weights[k] * pts[idx];
  }
  r.value = lambda.dot(r.outcome.vec());
  return r;
}

SupportResult support_value(const Eigen::Vector2d& lambda, const Market& mkt,
                            const TypeDistribution& dist, std::size_t grid) {
  return support_value(lambda, sample_graph(mkt, dist, grid));
}

ImplementableSet implementable_set(const Market& mkt, const TypeDistribution& dist,
                                   std::size_t grid, std::size_t directions) {
  require(directions >= 8, ErrorCode::InvalidArgument, "need at least eight directions");
  const GraphSample graph = sample_graph(mkt, dist, grid);
  std::vector<SupportResult> certs(directions);
  parallel_for(directions, [&](std::size_t k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(directions);
    Eigen::Vector2d lambda(std::cos(phi), std::sin(phi));
    for (Eigen::Index c = 0; c < 2; ++c) {
      if (std::abs(lambda(c)) < 1e-15) lambda(c) = 0.0;
    }
    certs[k] = support_value(lambda, graph);
  });
  // Exact prior slice of the grid-restricted set: its vertices are two-point
  // mixes straddling the prior, so the hull of all such mixes is the set.
  // Every hull vertex gets its generating split as an extra certificate.
  struct Node {
    double mu;
    TieBreak tie;
    Eigen::Vector2d v;
  };
  std::vector<Node> below;
  std::vector<Node> above;
  std::vector<Node> at_prior;
  const double mu0 = graph.prior();
  auto place = [&](double mu, TieBreak tie, const WelfareOutcome& o) {
    auto& bucket = mu == mu0 ? at_prior : (mu < mu0 ? below : above);
    bucket.push_back({mu, tie, o.vec()});
  };
  for (std::size_t i = 0; i < graph.size(); ++i) place(graph.mus()[i], TieBreak::Low, graph.points()[i]);
  for (const auto& a : graph.alternates()) place(graph.mus()[a.index], TieBreak::High, a.outcome);

  struct Generated {
    Eigen::Vector2d v;
    BeliefSplit split;
  };
  std::vector<std::vector<Generated>> rows(below.size());
  parallel_for(below.size(), [&](std::size_t i) {
    geometry::Polyline row;
    row.reserve(above.size());
    for (const Node& hi : above) {
      const double w = (hi.mu - mu0) / (hi.mu - below[i].mu);
      row.push_back(w * below[i].v + (1.0 - w) * hi.v);
    }
    for (const auto& h : geometry::convex_hull(row)) {
      const auto j = static_cast<std::size_t>(std::find(row.begin(), row.end(), h) - row.begin());
      rows[i].push_back({h, two_point(below[i].mu, below[i].tie, above[j].mu, above[j].tie, mu0)});
    }
  });
  std::vector<Generated> gens;
  for (const Node& n : at_prior) gens.push_back({n.v, {{n.mu}, {1.0}, {n.tie}}});
  for (auto& r : rows) gens.insert(gens.end(), r.begin(), r.end());

  geometry::Polyline pts;
  pts.reserve(gens.size() + certs.size());
  for (const auto& g : gens) pts.push_back(g.v);
  for (const auto& c : certs) pts.push_back(c.outcome.vec());
  std::vector<WelfareOutcome> boundary;
  for (const auto& p : geometry::convex_hull(pts)) {
    boundary.push_back(WelfareOutcome::from(p));
    const auto k = static_cast<std::size_t>(std::find(pts.begin(), pts.end(), p) - pts.begin());
    if (k < gens.size()) certs.push_back({Eigen::Vector2d::Zero(), 0.0, gens[k].split, WelfareOutcome::from(p)});
  }
  return {OutcomeSet(std::move(boundary), dist.mean()), std::move(certs)};
}

FiniteSignal split_to_signal(const BeliefSplit& split, double mu0) {
  detail::require_interior_prior(mu0);
  split.check_plausible(mu0);
  const auto k = static_cast<Eigen::Index>(split.size());
  FiniteSignal::Matrix lik(2, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double mu = split.support[static_cast<std::size_t>(i)];
    const double w = split.weights[static_cast<std::size_t>(i)];
    lik(0, i) = w * (1.0 - mu) / (1.0 - mu0);
    lik(1, i) = w * mu / mu0;
  }
  // Rows are off by at most the plausibility tolerance; rescale to exact sums.
  for (Eigen::Index r = 0; r < 2; ++r) lik.row(r) /= lik.row(r).sum();
  return FiniteSignal(std::move(lik));
}

WelfareOutcome outcome_of_signal(const FiniteSignal& sig, const Market& mkt,
                                 const TypeDistribution& dist) {
  require(sig.value_count() == 2, ErrorCode::InvalidArgument, "binary-value signal required");
  const double mu0 = dist.mean();
  detail::require_interior_prior(mu0);
  WelfareOutcome total;
  for (Eigen::Index s = 0; s < sig.realization_count(); ++s) {
    const double high = mu0 * sig(1, s);
    const double prob = high + (1.0 - mu0) * sig(0, s);
    if (prob <= 0.0) continue;
    const double mu = std::clamp(high / prob, 0.0, 1.0);
    total = total + prob * indirect_outcome(mu, mkt, dist);
  }
  return total;
}

namespace {

struct Ends {
  double lo;
  TieBreak lo_tie;
  double hi;
  TieBreak hi_tie;
};

Ends ends_of(const BeliefSplit& s, double mu0) {
  if (s.size() == 1) return {mu0, TieBreak::Low, mu0, TieBreak::Low};
  const std::size_t a = s.support[0] <= s.support[1] ? 0 : 1;
  return {s.support[a], s.ties[a], s.support[1 - a], s.ties[1 - a]};
}

}  // namespace

BeliefSplit certify_outcome(const WelfareOutcome& target, const ImplementableSet& solved,
                            const Market& mkt, const TypeDistribution& dist) {
  const double mu0 = dist.mean();
  const Eigen::Vector2d origin = indirect_outcome(mu0, mkt, dist).vec();
  const Eigen::Vector2d d = target.vec() - origin;
  if (d.norm() <= 1e-12) return BeliefSplit::point(mu0);

  struct Entry {
    double angle;
    const SupportResult* cert;
  };
  std::vector<Entry> entries;
  for (const auto& c : solved.certificates) {
    const Eigen::Vector2d v = c.outcome.vec() - origin;
    if (v.norm() > 1e-12 && solved.set.signed_distance(c.outcome) >= -1e-10) {
      entries.push_back({std::atan2(v.y(), v.x()), &c});
    }
  }
  require(!entries.empty(), ErrorCode::InvalidArgument, "target outside a one-point set");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.angle < b.angle; });

  const double phi = std::atan2(d.y(), d.x());
  const double two_pi = 2.0 * std::numbers::pi;
  auto ccw_gap = [&](double from, double to) {
    double g = std::fmod(to - from, two_pi);
    return g < 0.0 ? g + two_pi : g;
  };
  const Entry* first = nullptr;
  const Entry* second = nullptr;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& a = entries[i];
    const Entry& b = entries[(i + 1) % entries.size()];
    const double span = ccw_gap(a.angle, b.angle);
    if (span > std::numbers::pi) continue;
    if (ccw_gap(a.angle, phi) <= span) {
      first = &a;
      second = &b;
      break;
    }
  }
  require(first != nullptr, ErrorCode::InvalidArgument, "target lies outside the solved set");

  auto along = [&](const Eigen::Vector2d& q) { return (q - origin).dot(d) / d.squaredNorm(); };
  auto side = [&](const Eigen::Vector2d& q) { return geometry::cross(d, q - origin); };
  auto finish = [&](const BeliefSplit& boundary_split, const Eigen::Vector2d& q) {
    const double t = along(q);
    require(t >= 1.0 - 1e-9, ErrorCode::InvalidArgument, "target lies outside the solved set");
    const double r = std::min(1.0, 1.0 / t);
    return BeliefSplit::mix(BeliefSplit::point(mu0), 1.0 - r, boundary_split, r);
  };

  // Continuous path between the two bracketing certificates.
  const Ends e0 = ends_of(first->cert->split, mu0);
  const Ends e1 = ends_of(second->cert->split, mu0);
  auto path = [&](double s) {
    const bool left = s < 0.5;
    return two_point((1.0 - s) * e0.lo + s * e1.lo, left ? e0.lo_tie : e1.lo_tie,
                     (1.0 - s) * e0.hi + s * e1.hi, left ? e0.hi_tie : e1.hi_tie, mu0);
  };
  double s_lo = 0.0;
  double s_hi = 1.0;
  const double side_lo = side(first->cert->outcome.vec());
  for (int it = 0; it < 200 && side_lo != 0.0; ++it) {
    const double mid = 0.5 * (s_lo + s_hi);
    const double v = side(outcome_of_split(path(mid), mkt, dist).vec());
    if ((v < 0.0) == (side_lo < 0.0)) {
      s_lo = mid;
    } else {
      s_hi = mid;
    }
  }
  const BeliefSplit on_ray = side_lo == 0.0 ? first->cert->split : path(0.5 * (s_lo + s_hi));
  const Eigen::Vector2d q = outcome_of_split(on_ray, mkt, dist).vec();
  if (std::abs(side(q)) <= 1e-10 * d.norm() && along(q) >= 1.0 - 1e-9) {
    const BeliefSplit out = finish(on_ray, q);
    if ((outcome_of_split(out, mkt, dist).vec() - target.vec()).norm() <= 1e-8) return out;
  }

  // Any two-point split on the ray beyond the target also works: scan pairs of
  // certificate beliefs and bisect the high belief onto the ray.
  std::vector<std::pair<double, TieBreak>> lows;
  std::vector<std::pair<double, TieBreak>> highs;
  for (const Entry& en : entries) {
    const auto& sp = en.cert->split;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      if (sp.support[i] < mu0) lows.emplace_back(sp.support[i], sp.ties[i]);
      if (sp.support[i] > mu0) highs.emplace_back(sp.support[i], sp.ties[i]);
    }
  }
  for (auto* v : {&lows, &highs}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  for (const auto& [lo, lo_tie] : lows) {
    double prev_side = 0.0;
    for (std::size_t j = 0; j < highs.size(); ++j) {
      const auto [hi, hi_tie] = highs[j];
      const double cur = side(outcome_of_split(two_point(lo, lo_tie, hi, hi_tie, mu0), mkt, dist).vec());
      if (j > 0 && (cur < 0.0) != (prev_side < 0.0)) {
        double a_hi = highs[j - 1].first;
        double b_hi = hi;
        const bool neg_at_a = prev_side < 0.0;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (a_hi + b_hi);
          const double v = side(outcome_of_split(two_point(lo, lo_tie, mid, hi_tie, mu0), mkt, dist).vec());
          ((v < 0.0) == neg_at_a ? a_hi : b_hi) = mid;
        }
        const BeliefSplit cand = two_point(lo, lo_tie, 0.5 * (a_hi + b_hi), hi_tie, mu0);
        const Eigen::Vector2d qc = outcome_of_split(cand, mkt, dist).vec();
        if (std::abs(side(qc)) <= 1e-10 * d.norm() && along(qc) >= 1.0 - 1e-12) {
          const BeliefSplit out = finish(cand, qc);
          if ((outcome_of_split(out, mkt, dist).vec() - target.vec()).norm() <= 1e-8) return out;
        }
      }
      prev_side = cur;
    }
  }

  // Discontinuous graph: mix the two certificates along their hull edge.
  const Eigen::Vector2d a = first->cert->outcome.vec();
  const Eigen::Vector2d b = second->cert->outcome.vec();
  const double sa = side(a);
  const double sb = side(b);
  const double lam = sa == sb ? 0.0 : sa / (sa - sb);
  const BeliefSplit edge = BeliefSplit::mix(first->cert->split, 1.0 - lam, second->cert->split, lam);
  return finish(edge, (1.0 - lam) * a + lam * b);
}

}  // namespace infodesign
