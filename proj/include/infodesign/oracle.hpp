#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infodesign/core.hpp"
#include "infodesign/mechanisms.hpp"

namespace infodesign::oracle {

struct OracleConfig {
  double grid_step = 0.05;
  int realization_cap = 3;
  std::uint64_t rng_seed = 0x5EEDULL;
  std::uint64_t sample_count = 1000000;

  void validate() const;
};

// Counter-based generator: draw i of stream s is
// mix64(key + (i+1)·0x9E3779B97F4A7C15) with key = mix64(seed ^ mix64(s)),
// where mix64 is the SplitMix64 finalizer.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  // Uniform on [0,1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

// Binary signals (α, β) on the grid with β >= α, then signals with up to
// realization_cap realizations on a grid of step 2·grid_step.
std::vector<WelfareOutcome> enumerate_public_outcomes(const Market& mkt,
                                                      const TypeDistribution& dist,
                                                      const OracleConfig& cfg);

std::size_t binary_signal_count(const OracleConfig& cfg);

struct MenuCloud {
  std::vector<WelfareOutcome> outcomes;
  std::size_t menus_checked = 0;
  std::size_t menus_ic = 0;
};

// All menus assigning one grid binary signal per type, kept when every type
// weakly prefers its own signal by decision value.
MenuCloud enumerate_small_menus(const Market& mkt, const TypeDistribution& atoms,
                                const OracleConfig& cfg);

// Expected profit of a type that prices optimally after each realization.
double decision_value(double theta, const BinarySignal& s, const Market& mkt);

struct Estimate {
  WelfareOutcome mean;
  WelfareOutcome standard_error;
  std::uint64_t draws = 0;
};

Estimate simulate_game(const FiniteSignal& sig, const Market& mkt, const TypeDistribution& dist,
                       const OracleConfig& cfg);
// Types drawn from the mechanism grid with the given weights; each type
// reports truthfully and obeys.
Estimate simulate_game(const DirectMechanism& mech, const Eigen::VectorXd& weights,
                       const Market& mkt, const OracleConfig& cfg);

// Random mechanism where each type picks its favourite item from a random
// menu of binary signals plus always-L and always-H; IC and obedient.
DirectMechanism random_ic_mechanism(CounterRng& rng, std::size_t types, const Market& mkt);
// Random grid with arbitrary monotone-or-not (α, β); usually not IC.
DirectMechanism random_mechanism(CounterRng& rng, std::size_t types);

struct OracleReport {
  std::string check;
  bool pass = false;
  double max_violation = 0.0;
  OracleConfig config;
};

std::string to_json(const OracleReport& report);

}  // namespace infodesign::oracle
