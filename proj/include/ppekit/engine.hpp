#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ppekit/deviation.hpp"
#include "ppekit/frontier.hpp"
#include "ppekit/game.hpp"

namespace ppekit {

enum class Signal { kGood, kBad };

char signal_char(Signal s);

struct EngineOptions {
  // Require only Conditions 3 and 4 (plus regularity). Floors and the
  // accounting identities still hold; incentive compatibility may not.
  bool relax_incentive = false;
  ProfileSearchOptions search;
};

struct EquilibriumConfig {
  ReducedGame game;
  EfficientFrontier frontier;
  DeviationStats stats;
  std::vector<double> mu;
  double delta = 0.0;
  std::vector<double> v0;
  ConditionReport report;

  std::size_t players() const noexcept { return mu.size(); }

  // Computes frontier, stats and conditions. mu defaults to the Condition 3
  // bound, v0 to the mean of the corners of V_mu. Throws ConditionsNotMet.
  static EquilibriumConfig build(ReducedGame game, std::optional<std::vector<double>> mu, double delta,
                                 std::optional<std::vector<double>> v0 = std::nullopt,
                                 const EngineOptions& options = {});
};

struct ContinuationState {
  std::size_t t = 0;
  std::vector<double> v;
  int last_active = -1;
};

struct Continuations {
  std::vector<double> good;
  std::vector<double> bad;
};

double indicator(const EquilibriumConfig& config, std::span<const double> v, std::size_t j);
std::vector<double> indicators(const EquilibriumConfig& config, std::span<const double> v);

// argmax of the indicators; ties go to the largest index.
std::size_t select_active(std::span<const double> d);
std::size_t select_active(const EquilibriumConfig& config, const ContinuationState& state);

// Continuation payoffs after each signal when i is active at v. Inactive
// coordinates follow the closed forms; the active one is read off the
// hyperplane, which keeps lambda . v = 1 from drifting.
Continuations continuations(const EquilibriumConfig& config, std::span<const double> v, std::size_t i);

// Active coordinate from the closed form (for cross-checks).
double active_continuation_closed_form(const EquilibriumConfig& config, std::span<const double> v, std::size_t i,
                                       Signal s);

struct Plan {
  std::size_t active = 0;
  JointAction action;
  std::vector<double> d;
  Continuations next;
};

Plan plan(const EquilibriumConfig& config, const ContinuationState& state);

// Moves to the continuation for `s`; throws FloorBreach below mu - 1e-9.
ContinuationState advance(const EquilibriumConfig& config, const ContinuationState& state, const Plan& p, Signal s);

struct StepResult {
  Plan plan;
  ContinuationState next;
};

StepResult step(const EquilibriumConfig& config, const ContinuationState& state, Signal s);

using SignalSource = std::function<Signal(std::size_t t, std::size_t active, std::span<const double> action)>;

SignalSource recorded_signals(std::vector<Signal> signals);
// Draws the bad signal with probability rho_bad(active; action) using the
// counter-based stream (seed, stream) at counter t.
SignalSource sampled_signals(const ReducedGame& game, std::uint64_t seed, std::uint64_t stream = 0);

struct TrajectoryRow {
  std::size_t t = 0;
  std::size_t active = 0;
  Signal signal = Signal::kGood;
  std::vector<double> v;  // state before the signal
  std::vector<double> d;
  Continuations next;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  ContinuationState final_state;
};

Trajectory run(const EquilibriumConfig& config, const SignalSource& source, std::size_t periods,
               std::optional<std::vector<double>> start = std::nullopt);

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

// max_k |v_k - (1 - delta) U_k(a~^i) - delta E[gamma_k]|.
double promise_keeping_residual(const EquilibriumConfig& config, std::span<const double> v, std::size_t i,
                                const Continuations& next);

// v_j minus j's value from deviating to aj while i is active (>= 0 means no gain).
double ic_slack(const EquilibriumConfig& config, std::span<const double> v, std::size_t i, const Continuations& next,
                std::size_t j, double aj);

}  // namespace ppekit
