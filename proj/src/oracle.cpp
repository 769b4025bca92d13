#include "infodesign/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "json.hpp"

#include "infodesign/numeric.hpp"
#include "infodesign/persuasion.hpp"

namespace infodesign::oracle {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::size_t kChunks = 64;

std::size_t grid_points(double step) {
  return static_cast<std::size_t>(std::llround(1.0 / step));
}

// Compensated running sum.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Moments {
  Neumaier u, u2, p, p2;
  std::uint64_t n = 0;
  void add(double surplus, double profit) {
    u.add(surplus);
    u2.add(surplus * surplus);
    p.add(profit);
    p2.add(profit * profit);
    ++n;
  }
};

Estimate finish(const std::array<Moments, kChunks>& chunks) {
  Neumaier u, u2, p, p2;
  std::uint64_t n = 0;
  for (const auto& c : chunks) {
    u.add(c.u.value());
    u2.add(c.u2.value());
    p.add(c.p.value());
    p2.add(c.p2.value());
    n += c.n;
  }
  Estimate e;
  e.draws = n;
  const double dn = static_cast<double>(n);
  e.mean = {u.value() / dn, p.value() / dn};
  auto se = [dn](double s, double s2) {
    const double var = std::max(0.0, s2 / dn - (s / dn) * (s / dn));
    return std::sqrt(var / dn);
  };
  e.standard_error = {se(u.value(), u2.value()), se(p.value(), p2.value())};
  return e;
}

template <typename Draw>
Estimate run_chunks(const OracleConfig& cfg, Draw draw) {
  std::array<Moments, kChunks> chunks;
  parallel_for(kChunks, [&](std::size_t c) {
    CounterRng rng(cfg.rng_seed, c);
    const std::uint64_t count =
        cfg.sample_count / kChunks + (c < cfg.sample_count % kChunks ? 1 : 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto [u, p] = draw(rng);
      chunks[c].add(u, p);
    }
  });
  return finish(chunks);
}

// Realization-by-realization outcome when a type prices optimally, ties to L.
WelfareOutcome priced_outcome(double theta, const BinarySignal& s, const Market& mkt) {
  WelfareOutcome out;
  const std::array<std::pair<double, double>, 2> cells{
      std::make_pair(1.0 - s.alpha, 1.0 - s.beta), std::make_pair(s.alpha, s.beta)};
  for (const auto& [low_lik, high_lik] : cells) {
    const double mass_high = theta * high_lik;
    const double mass = mass_high + (1.0 - theta) * low_lik;
    if (mkt.high() * mass_high > mkt.low() * mass) {
      out.seller_profit += mkt.high() * mass_high;
    } else {
      out.seller_profit += mkt.low() * mass;
      out.buyer_surplus += mkt.spread() * mass_high;
    }
  }
  return out;
}

std::pair<double, double> sorted_pair(CounterRng& rng) {
  const double a = rng.uniform();
  const double b = rng.uniform();
  return {std::min(a, b), std::max(a, b)};
}

Eigen::VectorXd random_grid(CounterRng& rng, std::size_t types) {
  for (;;) {
    std::vector<double> g(types);
    for (double& x : g) x = rng.uniform();
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end()) continue;
    return Eigen::Map<Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(types));
  }
}

}  // namespace

void OracleConfig::validate() const {
  require(grid_step > 0.0 && grid_step <= 1.0, ErrorCode::InvalidArgument,
          "grid step must lie in (0,1]");
  require(std::abs(grid_step * static_cast<double>(grid_points(grid_step)) - 1.0) <= 1e-9,
          ErrorCode::InvalidArgument, "grid step must divide 1");
  require(realization_cap >= 2, ErrorCode::InvalidArgument, "realization cap must be at least 2");
  require(sample_count > 0, ErrorCode::InvalidArgument, "sample count must be positive");
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream))) {}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t binary_signal_count(const OracleConfig& cfg) {
  const std::size_t n = grid_points(cfg.grid_step) + 1;
  return n * (n + 1) / 2;
}

std::vector<WelfareOutcome> enumerate_public_outcomes(const Market& mkt,
                                                      const TypeDistribution& dist,
                                                      const OracleConfig& cfg) {
  cfg.validate();
  std::vector<WelfareOutcome> out;
  const std::size_t n = grid_points(cfg.grid_step);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      const BinarySignal s(static_cast<double>(i) / static_cast<double>(n),
                           static_cast<double>(j) / static_cast<double>(n));
      out.push_back(outcome_of_signal(FiniteSignal::from_binary(s), mkt, dist));
    }
  }
  if (cfg.realization_cap < 3) return out;

  // Rows on the coarse simplex grid with three cells each.
  const std::size_t k = grid_points(std::min(1.0, 2.0 * cfg.grid_step));
  std::vector<std::array<double, 3>> rows;
  for (std::size_t a = 0; a <= k; ++a) {
    for (std::size_t b = 0; a + b <= k; ++b) {
      const double dk = static_cast<double>(k);
      rows.push_back({static_cast<double>(a) / dk, static_cast<double>(b) / dk,
                      static_cast<double>(k - a - b) / dk});
    }
  }
  for (const auto& lo : rows) {
    for (const auto& hi : rows) {
      FiniteSignal::Matrix lik(2, 3);
      for (int c = 0; c < 3; ++c) {
        lik(0, c) = lo[static_cast<std::size_t>(c)];
        lik(1, c) = hi[static_cast<std::size_t>(c)];
      }
      out.push_back(outcome_of_signal(FiniteSignal(std::move(lik)), mkt, dist));
    }
  }
  return out;
}

double decision_value(double theta, const BinarySignal& s, const Market& mkt) {
  return priced_outcome(theta, s, mkt).seller_profit;
}

MenuCloud enumerate_small_menus(const Market& mkt, const TypeDistribution& atoms,
                                const OracleConfig& cfg) {
  cfg.validate();
  const auto& types = atoms.atom_list();
  require(!types.empty() && types.size() <= 3, ErrorCode::InvalidArgument,
          "menu enumeration needs between one and three atoms");
  const std::size_t n = grid_points(cfg.grid_step);
  std::vector<BinarySignal> items;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      items.emplace_back(static_cast<double>(i) / static_cast<double>(n),
                         static_cast<double>(j) / static_cast<double>(n));
    }
  }
  const std::size_t m = items.size();
  const std::size_t t = types.size();
  std::vector<std::vector<double>> value(t, std::vector<double>(m));
  std::vector<std::vector<WelfareOutcome>> outcome(t, std::vector<WelfareOutcome>(m));
  for (std::size_t k = 0; k < t; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      outcome[k][i] = priced_outcome(types[k].theta, items[i], mkt);
      value[k][i] = outcome[k][i].seller_profit;
    }
  }

  MenuCloud cloud;
  std::vector<std::size_t> pick(t, 0);
  for (;;) {
    ++cloud.menus_checked;
    bool ic = true;
    for (std::size_t k = 0; k < t && ic; ++k) {
      for (std::size_t j = 0; j < t; ++j) {
        if (value[k][pick[j]] > value[k][pick[k]] + kIcTolerance) {
          ic = false;
          break;
        }
      }
    }
    if (ic) {
      ++cloud.menus_ic;
      WelfareOutcome total;
      for (std::size_t k = 0; k < t; ++k) total = total + types[k].weight * outcome[k][pick[k]];
      cloud.outcomes.push_back(total);
    }
    std::size_t d = 0;
    while (d < t && ++pick[d] == m) pick[d++] = 0;
    if (d == t) break;
  }
  return cloud;
}

Estimate simulate_game(const FiniteSignal& sig, const Market& mkt, const TypeDistribution& dist,
                       const OracleConfig& cfg) {
  cfg.validate();
  require(sig.value_count() == 2, ErrorCode::InvalidArgument, "binary-value signal required");
  const auto& lik = sig.likelihood();
  const Eigen::Index cols = lik.cols();
  return run_chunks(cfg, [&](CounterRng& rng) {
    const double theta = dist.quantile(rng.uniform());
    const bool high = rng.uniform() < theta;
    const Eigen::Index row = high ? 1 : 0;
    const double u = rng.uniform();
    Eigen::Index s = 0;
    double acc = lik(row, 0);
    while (s + 1 < cols && u >= acc) acc += lik(row, ++s);
    const double mass_high = theta * lik(1, s);
    const double belief = mass_high / (mass_high + (1.0 - theta) * lik(0, s));
    const bool price_high = belief > mkt.ratio();
    if (price_high) return std::make_pair(0.0, high ? mkt.high() : 0.0);
    return std::make_pair(high ? mkt.spread() : 0.0, mkt.low());
  });
}

Estimate simulate_game(const DirectMechanism& mech, const Eigen::VectorXd& weights,
                       const Market& mkt, const OracleConfig& cfg) {
  cfg.validate();
  require(static_cast<std::size_t>(weights.size()) == mech.size(), ErrorCode::InvalidArgument,
          "one weight per type required");
  std::vector<double> cumulative(mech.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < mech.size(); ++i) {
    acc += weights(static_cast<Eigen::Index>(i));
    cumulative[i] = acc;
  }
  return run_chunks(cfg, [&](CounterRng& rng) {
    const double u = rng.uniform() * acc;
    const std::size_t k = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                 cumulative.begin()),
        mech.size() - 1);
    const BinarySignal s = mech.signal(k);
    const bool high = rng.uniform() < mech.theta(k);
    const bool recommend_high = rng.uniform() < (high ? s.beta : s.alpha);
    if (recommend_high) return std::make_pair(0.0, high ? mkt.high() : 0.0);
    return std::make_pair(high ? mkt.spread() : 0.0, mkt.low());
  });
}

DirectMechanism random_ic_mechanism(CounterRng& rng, std::size_t types, const Market& mkt) {
  require(types > 0, ErrorCode::InvalidArgument, "need at least one type");
  std::vector<BinarySignal> menu{BinarySignal::uninformative(), BinarySignal(1.0, 1.0)};
  for (std::size_t i = 0; i < types + 2; ++i) {
    const auto [a, b] = sorted_pair(rng);
    menu.emplace_back(a, b);
  }
  Eigen::VectorXd grid = random_grid(rng, types);
  Eigen::VectorXd alpha(grid.size());
  Eigen::VectorXd beta(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const BinarySignal* best = &menu.front();
    for (const auto& item : menu) {
      if (obedient_profit(grid(k), item, mkt) > obedient_profit(grid(k), *best, mkt)) best = &item;
    }
    alpha(k) = best->alpha;
    beta(k) = best->beta;
  }
  return DirectMechanism(std::move(grid), std::move(alpha), std::move(beta));
}

DirectMechanism random_mechanism(CounterRng& rng, std::size_t types) {
  require(types > 0, ErrorCode::InvalidArgument, "need at least one type");
  Eigen::VectorXd grid = random_grid(rng, types);
  Eigen::VectorXd alpha(grid.size());
  Eigen::VectorXd beta(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const auto [a, b] = sorted_pair(rng);
    alpha(k) = a;
    beta(k) = b;
  }
  return DirectMechanism(std::move(grid), std::move(alpha), std::move(beta));
}

std::string to_json(const OracleReport& report) {
  nlohmann::json j;
  j["check"] = report.check;
  j["pass"] = report.pass;
  j["max_violation"] = report.max_violation;
  j["config"] = {{"grid_step", report.config.grid_step},
                 {"realization_cap", report.config.realization_cap},
                 {"rng_seed", report.config.rng_seed},
                 {"sample_count", report.config.sample_count}};
  return j.dump();
}

}  // namespace infodesign::oracle
