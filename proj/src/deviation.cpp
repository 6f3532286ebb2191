#include "ppekit/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ppekit/error.hpp"
#include "ppekit/search.hpp"

namespace ppekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

RatioResult alpha(const ReducedGame& game, const EfficientFrontier& frontier, std::size_t i, std::size_t j) {
  const JointAction& at = frontier.a_tilde.at(i);
  const double base_u = frontier.v_tilde[i][j];
  const double base_bad = game.bad_prob(i, at);
  const Extremum e = maximize_over(game.actions(j), [&](double x) {
    const JointAction d = deviate(at, j, x);
    const double gain = game.payoff(j, d) - base_u;
    if (!(gain > tol::kStrict)) return -kInfinity;
    const double rise = game.bad_prob(i, d) - base_bad;
    if (!(rise > tol::kStrict)) {
      throw Error(ErrorCode::kLabelingViolation,
                  "profitable deviation a_" + std::to_string(j + 1) + " = " + game.actions(j).describe(x) +
                      " from the profile preferred by player " + std::to_string(i + 1) +
                      " does not raise the bad signal (change " + fmt(rise) + ")");
    }
    return gain / rise;
  });
  if (!e.found) return {-kInfinity, kNaN};
  return {e.value, e.action};
}

RatioResult beta(const ReducedGame& game, const EfficientFrontier& frontier, std::size_t i, std::size_t j) {
  const JointAction& at = frontier.a_tilde.at(i);
  const double base_u = frontier.v_tilde[i][j];
  const double base_bad = game.bad_prob(i, at);
  const Extremum e = minimize_over(game.actions(j), [&](double x) {
    const JointAction d = deviate(at, j, x);
    const double gain = game.payoff(j, d) - base_u;
    const double rise = game.bad_prob(i, d) - base_bad;
    if (gain < -tol::kStrict && rise < -tol::kStrict) return gain / rise;
    return kInfinity;
  });
  if (!e.found) return {kInfinity, kNaN};
  return {e.value, e.action};
}

double DeviationStats::alpha_term(std::size_t i, std::size_t j) const {
  const double a = alpha.at(i).at(j);
  return std::isinf(a) && a < 0.0 ? 0.0 : a;
}

DeviationStats compute_stats(const ReducedGame& game, const EfficientFrontier& frontier) {
  const std::size_t n = game.players();
  DeviationStats s;
  s.alpha.assign(n, std::vector<double>(n, kNaN));
  s.beta = s.alpha;
  s.alpha_witness = s.alpha;
  s.beta_witness = s.alpha;
  s.rho_bad.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.rho_bad[i] = game.bad_prob(i, frontier.a_tilde[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const RatioResult a = alpha(game, frontier, i, j);
      const RatioResult b = beta(game, frontier, i, j);
      s.alpha[i][j] = a.value;
      s.alpha_witness[i][j] = a.witness;
      s.beta[i][j] = b.value;
      s.beta_witness[i][j] = b.witness;
    }
  }
  return s;
}

bool check_prop1(const ReducedGame& game, const EfficientFrontier& frontier, std::size_t i) {
  const JointAction& at = frontier.a_tilde.at(i);
  for (std::size_t j = 0; j < game.players(); ++j) {
    if (j == i) continue;
    const double base = frontier.v_tilde[i][j];
    const Extremum e = maximize_over(game.actions(j), [&](double x) { return game.payoff(j, deviate(at, j, x)); });
    if (e.value > base + tol::kStrict) return false;
  }
  return true;
}

std::vector<double> mu_min(const EfficientFrontier& frontier, const DeviationStats& stats) {
  const std::size_t n = frontier.players();
  std::vector<double> out(n, -kInfinity);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double a = stats.alpha[j][i];
      if (std::isinf(a) && a < 0.0) continue;
      out[i] = std::max(out[i], frontier.v_tilde[j][i] + a * (1.0 - stats.rho_bad[j]));
    }
  }
  return out;
}

std::vector<double> default_mu(const EfficientFrontier& frontier, const DeviationStats& stats) {
  std::vector<double> mu = mu_min(frontier, stats);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (std::isinf(mu[i])) {
      double lo = kInfinity;
      for (const auto& row : frontier.v_tilde) lo = std::min(lo, row[i]);
      mu[i] = lo;
    }
  }
  return mu;
}

Regularity regularity(const EfficientFrontier& frontier, const std::vector<double>& mu) {
  const std::size_t n = frontier.players();
  if (mu.size() != n) throw Error(ErrorCode::kDimensionMismatch, "mu needs one entry per player");
  const double w = dot(frontier.lambda, mu);
  if (w > 1.0 + tol::kHyperplane) {
    throw Error(ErrorCode::kInfeasibleMu, "lambda . mu = " + fmt(w) + " > 1, so V_mu is empty");
  }
  Regularity r;
  r.regular = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v = mu;
    double rest = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i) rest += frontier.lambda[k] * mu[k];
    }
    v[i] = (1.0 - rest) / frontier.lambda[i];
    std::vector<double> th = barycentric(frontier, v);
    for (double t : th) {
      if (t < -1e-12) r.regular = false;
    }
    r.vhat.push_back(std::move(v));
    r.theta.push_back(std::move(th));
  }
  return r;
}

double min_discount(const EfficientFrontier& frontier, const DeviationStats& stats, const std::vector<double>& mu) {
  const std::size_t n = frontier.players();
  double denom = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    denom += frontier.lambda[i] * frontier.v_tilde[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom += frontier.lambda[j] * stats.alpha_term(i, j) * stats.rho_bad[i];
    }
  }
  denom -= 1.0;
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::kDegenerateDenominator, "discount bound denominator is " + fmt(denom));
  }
  const double z = (1.0 - dot(frontier.lambda, mu)) / denom;
  return 1.0 / (1.0 + z);
}

ConditionCheck check_cond2(const ReducedGame& game, const EfficientFrontier& frontier, const DeviationStats& stats,
                           std::size_t i) {
  const std::size_t n = game.players();
  const JointAction& at = frontier.a_tilde.at(i);
  const double vii = frontier.v_tilde[i][i];
  const double base_bad = stats.rho_bad[i];
  double weight = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) weight += frontier.lambda[j] * stats.alpha_term(i, j);
  }
  weight /= frontier.lambda[i];
  const Extremum e = minimize_over(game.actions(i), [&](double x) {
    if (x == at[i]) return kInfinity;
    const JointAction d = deviate(at, i, x);
    const double lhs = vii - game.payoff(i, d);
    const double rhs = weight * (game.bad_prob(i, d) - base_bad);
    return lhs - rhs;
  });
  ConditionCheck c;
  c.margin = e.found ? e.value : kInfinity;
  c.pass = c.margin >= -tol::kStrict;
  if (e.found) {
    c.witness = "player " + std::to_string(i + 1) + ", a_i = " + game.actions(i).describe(e.action);
  }
  return c;
}

ConditionReport check_conditions(const ReducedGame& game, const EfficientFrontier& frontier,
                                 const DeviationStats& stats, const std::vector<double>& mu, double delta) {
  const std::size_t n = game.players();
  if (mu.size() != n) throw Error(ErrorCode::kDimensionMismatch, "mu needs one entry per player");
  ConditionReport r;
  r.mu = mu;
  r.delta = delta;
  r.mu_min = mu_min(frontier, stats);
  r.weighted_mu = dot(frontier.lambda, mu);

  // Condition 1.
  r.cond1.margin = kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = stats.alpha[i][j];
      const double b = stats.beta[i][j];
      const double m = (std::isinf(a) || std::isinf(b)) ? (a <= b ? kInfinity : -kInfinity) : b - a;
      if (m < r.cond1.margin) {
        r.cond1.margin = m;
        r.cond1.witness = "pair " + pair_name(i, j) + ": alpha " + fmt(a) + ", beta " + fmt(b);
      }
    }
  }
  r.cond1.pass = r.cond1.margin >= -tol::kStrict;

  // Condition 2.
  r.cond2.margin = kInfinity;
  r.cond2.pass = true;
  for (std::size_t i = 0; i < n; ++i) {
    ConditionCheck c = check_cond2(game, frontier, stats, i);
    if (c.margin < r.cond2.margin) {
      r.cond2.margin = c.margin;
      r.cond2.witness = c.witness;
    }
    r.cond2.pass = r.cond2.pass && c.pass;
  }

  // Condition 3.
  r.cond3.margin = kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mu[i] - r.mu_min[i];
    if (m < r.cond3.margin) {
      r.cond3.margin = m;
      r.cond3.witness = "player " + std::to_string(i + 1) + ": mu " + fmt(mu[i]) + ", bound " + fmt(r.mu_min[i]);
    }
  }
  r.cond3.pass = r.cond3.margin >= -tol::kStrict;

  if (r.weighted_mu > 1.0 + tol::kHyperplane) {
    std::ostringstream os;
    os << "Condition 3 infeasible: lambda . mu = " << fmt(r.weighted_mu) << " > 1 (" << r.cond3.witness << ")";
    throw Error(ErrorCode::kInfeasibleMu, os.str());
  }
  r.regularity = regularity(frontier, mu);

  // Condition 4.
  if (r.weighted_mu >= 1.0 - tol::kHyperplane) {
    r.delta_min = 1.0;
    r.cond4.witness = "V_mu is a single point";
  } else {
    r.delta_min = min_discount(frontier, stats, mu);
    r.cond4.witness = "delta " + fmt(delta) + ", bound " + fmt(r.delta_min);
  }
  if (std::isnan(delta)) {
    // No discount factor given: report the bound only.
    r.cond4.margin = std::numeric_limits<double>::quiet_NaN();
    r.cond4.pass = r.delta_min < 1.0;
  } else {
    r.cond4.margin = delta - r.delta_min;
    r.cond4.pass = r.cond4.margin >= -tol::kStrict && r.delta_min < 1.0;
  }
  return r;
}

}  // namespace ppekit
