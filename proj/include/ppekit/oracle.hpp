#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ppekit/deviation.hpp"
#include "ppekit/frontier.hpp"
#include "ppekit/game.hpp"

namespace ppekit {

struct OracleOptions {
  // Feasible when the largest uniform constraint shift is >= -feasibility_tol.
  double feasibility_tol = 1e-9;
  // Compute the margin by bisection; otherwise only test feasibility.
  bool compute_margin = true;
  // n >= 4: candidate points per dimension in the continuation grid search.
  int search_points = 41;
  bool allow_grid_search = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct DecomposabilityResult {
  std::vector<double> target;
  bool feasible = false;
  int active = -1;  // profile used (0-based), -1 when infeasible
  std::vector<double> gamma_good;
  std::vector<double> gamma_bad;
  double margin = 0.0;                  // largest uniform shift for the chosen profile
  std::vector<double> profile_margins;  // per candidate active profile
  std::vector<std::string> binding;     // constraints tight at the chosen continuations
  std::vector<double> kappa_plus;       // per player; NaN for the active one
  std::vector<double> kappa_minus;
};

// Brute-force APS decomposition of v on V_mu: for each candidate active
// profile, searches continuation payoffs on the hyperplane satisfying the
// decomposition identity, floors, membership in V and every grid incentive
// constraint. Among feasible continuations the one with the smallest
// inactive good-signal values is returned.
DecomposabilityResult decomposable(const ReducedGame& game, const EfficientFrontier& frontier,
                                   const DeviationStats& stats, const std::vector<double>& mu, double delta,
                                   const std::vector<double>& v, const OracleOptions& options = {});

// Same, restricted to a single active profile i.
DecomposabilityResult decompose_with_active(const ReducedGame& game, const EfficientFrontier& frontier,
                                            const DeviationStats& stats, const std::vector<double>& mu,
                                            double delta, const std::vector<double>& v, std::size_t i,
                                            const OracleOptions& options = {});

struct SelfGenerationResult {
  bool self_generating = false;
  std::vector<double> worst_point;
  double worst_margin = 0.0;
  std::size_t points = 0;
  std::size_t failures = 0;
  std::vector<std::vector<double>> grid;  // covering points, in enumeration order
  std::vector<DecomposabilityResult> results;
};

// Checks decomposability on a covering grid of V_mu (k points per edge of the
// simplex spanned by the corners). V_mu must be regular.
SelfGenerationResult is_self_generating(const ReducedGame& game, const EfficientFrontier& frontier,
                                        const DeviationStats& stats, const std::vector<double>& mu, double delta,
                                        int k = 101, const OracleOptions& options = {});

void write_oracle_csv(std::ostream& os, const SelfGenerationResult& result);

enum class TwoPlayerCase { kNoEfficientPPE, kInterval };

struct TwoPlayerCharacterization {
  TwoPlayerCase kind = TwoPlayerCase::kNoEfficientPPE;
  std::vector<double> mu_bar;
  double delta_star = 0.0;  // NaN unless kind == kInterval and the interval is nonempty
  bool extreme_points_only = false;  // lambda . mu_bar > 1: nothing beyond the extreme points
  bool prop1[2] = {false, false};
  std::string description;
};

TwoPlayerCharacterization two_player(const ReducedGame& game, const EfficientFrontier& frontier,
                                     const DeviationStats& stats);

struct EfficientSet {
  bool empty = true;
  std::vector<double> low;   // endpoint with the smallest v_1
  std::vector<double> high;  // endpoint with the largest v_1
  std::vector<double> floors;
  std::size_t iterations = 0;
  bool converged = false;
};

// Two players: iterates the decomposition operator on segments of V from V
// itself down to its fixed point, the largest efficient set decomposable on
// itself at delta.
EfficientSet efficient_payoff_set(const ReducedGame& game, const EfficientFrontier& frontier,
                                  const DeviationStats& stats, double delta, std::size_t max_iterations = 200000,
                                  const OracleOptions& options = {});

}  // namespace ppekit
