#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ppekit/engine.hpp"

namespace ppekit {

enum class PolicyKind { kCompliance, kStationary, kOneShot, kMyopic };

struct DeviationPolicy {
  std::size_t deviator = 0;
  PolicyKind kind = PolicyKind::kCompliance;
  double action = 0.0;  // used by stationary and one-shot

  std::string describe(const ReducedGame& game) const;
};

struct SimOptions {
  std::size_t episodes = 10000;
  std::size_t horizon = 120;
  std::uint64_t seed = 1;
  // Largest tolerated delta^T * payoff range; NaN means 1e-9 * range.
  double eps_trunc = std::numeric_limits<double>::quiet_NaN();
  unsigned threads = 0;
  bool keep_episodes = false;
  int myopic_points = 21;  // deviation grid for interval spaces
};

struct EpisodeResult {
  std::vector<double> payoff;  // (1 - delta) sum_t delta^t U(a^t)
  std::uint64_t digest = 0;    // hash of the (active, action, signal) trace
  std::uint64_t seed = 0;
  std::size_t episode = 0;
  std::size_t bad_signals = 0;
  double expected_bad = 0.0;  // sum over periods of rho_bad at the played action
};

struct SimSummary {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::size_t episodes = 0;
  std::size_t horizon = 0;
  double bad_rate = 0.0;
  double expected_bad_rate = 0.0;
  std::vector<EpisodeResult> per_episode;
};

// Largest minus smallest stage payoff reachable on or one deviation away
// from the preferred profiles.
double payoff_range(const EquilibriumConfig& config);

EpisodeResult simulate_episode(const EquilibriumConfig& config, const std::optional<DeviationPolicy>& policy,
                               std::uint64_t seed, std::size_t episode, std::size_t horizon, int myopic_points = 21);

// Throws TruncationTooCoarse when delta^T * range exceeds eps_trunc.
SimSummary simulate(const EquilibriumConfig& config, const SimOptions& options);

struct DeviationResult {
  DeviationPolicy policy;
  double deviator_mean = 0.0;
  double deviator_stderr = 0.0;
  double compliant_mean = 0.0;
  double compliant_stderr = 0.0;
  double gain = 0.0;
  double pooled_stderr = 0.0;  // sqrt(se_dev^2 + se_comp^2)
};

// Same seeds for the deviating and compliant runs (common random numbers).
DeviationResult deviation_value(const EquilibriumConfig& config, const DeviationPolicy& policy,
                                const SimOptions& options);

// One stationary override per grid action of player j (21 points for
// interval spaces), excluding nothing.
std::vector<DeviationPolicy> stationary_policies(const EquilibriumConfig& config, std::size_t j, int points = 21);

void write_episodes_csv(std::ostream& os, const SimSummary& summary);

}  // namespace ppekit
