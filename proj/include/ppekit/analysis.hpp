#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ppekit/deviation.hpp"
#include "ppekit/frontier.hpp"
#include "ppekit/game.hpp"
#include "ppekit/oracle.hpp"

namespace ppekit {

struct AnalysisResult {
  EfficientFrontier frontier;
  DeviationStats stats;
  ConditionReport report;
  std::vector<bool> prop1;
  std::optional<TwoPlayerCharacterization> two_player;
};

// Frontier, alpha/beta, and the four conditions at mu (default: the
// Condition 3 bound) and delta (NaN: report the bound only).
AnalysisResult analyze(const ReducedGame& game, const std::optional<std::vector<double>>& mu, double delta,
                       const ProfileSearchOptions& search = {});

void write_analysis_csv(std::ostream& os, const ReducedGame& game, const AnalysisResult& result);
void write_analysis_summary(std::ostream& os, const AnalysisResult& result);

struct SweepRow {
  double value = 0.0;
  double fraction = 0.0;  // largest achievable 1 - eta; 0 when nothing is supported
  double delta_min = 0.0;  // NaN when undefined
  std::string status;      // ok, cond1_fail, cond2_fail, degenerate, infeasible, delta_below_min, cond3_fail
};

// Symmetric-floor summary of one game: eta = max_i mu_min_i / v~_i^i,
// fraction = 1 - eta, delta_min at mu = eta * v~.
SweepRow fraction_point(const ReducedGame& game, double value, const ProfileSearchOptions& search = {});

// Parameter sweeps. `make_game(x)` builds the game at sweep value x (d0 and
// kappa sweeps); delta and eta sweeps reuse `base`.
std::vector<SweepRow> sweep_game_parameter(const std::function<ReducedGame(double)>& make_game,
                                           const std::vector<double>& values, const ProfileSearchOptions& search = {},
                                           unsigned threads = 0);
std::vector<SweepRow> sweep_delta(const ReducedGame& base, const std::vector<double>& values,
                                  const ProfileSearchOptions& search = {});
std::vector<SweepRow> sweep_eta(const ReducedGame& base, const std::vector<double>& values,
                                const ProfileSearchOptions& search = {});

std::vector<double> linspace(double from, double to, std::size_t steps);

void write_sweep_csv(std::ostream& os, const std::string& parameter, const std::vector<SweepRow>& rows);

// Shortest round-trip text for a double ("inf", "-inf", "nan" for specials).
std::string format_number(double x);

}  // namespace ppekit
