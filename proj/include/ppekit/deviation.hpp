#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ppekit/frontier.hpp"
#include "ppekit/game.hpp"

namespace ppekit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct RatioResult {
  double value = 0.0;
  double witness = std::numeric_limits<double>::quiet_NaN();  // deviation action, NaN if none
};

// Largest gain / (increase in bad-signal probability) over j's profitable
// deviations from a_tilde^i; -inf when none is profitable. Throws
// LabelingViolation if a profitable deviation does not raise the bad signal.
RatioResult alpha(const ReducedGame& game, const EfficientFrontier& frontier, std::size_t i, std::size_t j);

// Smallest gain / change over deviations that lower both j's payoff and the bad
// signal; +inf when there are none.
RatioResult beta(const ReducedGame& game, const EfficientFrontier& frontier, std::size_t i, std::size_t j);

struct DeviationStats {
  std::vector<std::vector<double>> alpha;  // alpha[i][j]; diagonal unused (NaN)
  std::vector<std::vector<double>> beta;
  std::vector<std::vector<double>> alpha_witness;
  std::vector<std::vector<double>> beta_witness;
  std::vector<double> rho_bad;  // rho_bad[i] = bad-signal probability at a_tilde^i under label i

  std::size_t players() const noexcept { return rho_bad.size(); }
  // alpha with -inf mapped to 0, as it enters the continuation formulas.
  double alpha_term(std::size_t i, std::size_t j) const;
};

DeviationStats compute_stats(const ReducedGame& game, const EfficientFrontier& frontier);

// True iff no player j != i has a profitable deviation from a_tilde^i.
bool check_prop1(const ReducedGame& game, const EfficientFrontier& frontier, std::size_t i);

struct ConditionCheck {
  bool pass = false;
  double margin = 0.0;
  std::string witness;
};

struct Regularity {
  bool regular = false;
  std::vector<std::vector<double>> vhat;   // corner v^i of V_mu
  std::vector<std::vector<double>> theta;  // barycentric coordinates of each corner
};

struct ConditionReport {
  ConditionCheck cond1;
  ConditionCheck cond2;
  ConditionCheck cond3;
  ConditionCheck cond4;
  std::vector<double> mu;
  std::vector<double> mu_min;
  double delta = 0.0;
  double delta_min = 0.0;  // NaN when undefined
  double weighted_mu = 0.0;  // lambda . mu
  Regularity regularity;

  bool all_pass() const noexcept { return cond1.pass && cond2.pass && cond3.pass && cond4.pass; }
};

// Right-hand side of Condition 3 per player; -inf when no constraint applies.
std::vector<double> mu_min(const EfficientFrontier& frontier, const DeviationStats& stats);

// mu_min with unconstrained players set to their lowest payoff on V.
std::vector<double> default_mu(const EfficientFrontier& frontier, const DeviationStats& stats);

Regularity regularity(const EfficientFrontier& frontier, const std::vector<double>& mu);

// Smallest discount factor for which V_mu is self-generating, given
// Conditions 1-3. Throws DegenerateDenominator.
double min_discount(const EfficientFrontier& frontier, const DeviationStats& stats, const std::vector<double>& mu);

// Sufficient conditions 1-4 at (mu, delta). A NaN delta reports the discount
// bound without judging it. Throws InfeasibleMu when lambda . mu > 1.
ConditionReport check_conditions(const ReducedGame& game, const EfficientFrontier& frontier,
                                 const DeviationStats& stats, const std::vector<double>& mu, double delta);

// Condition 2 alone for player i: margin = min over a_i of LHS - RHS.
ConditionCheck check_cond2(const ReducedGame& game, const EfficientFrontier& frontier, const DeviationStats& stats,
                           std::size_t i);

}  // namespace ppekit
