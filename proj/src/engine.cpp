#include "ppekit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ppekit/error.hpp"
#include "ppekit/rng.hpp"

namespace ppekit {

namespace {

constexpr double kFloorTol = 1e-9;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

char signal_char(Signal s) { return s == Signal::kGood ? 'g' : 'b'; }

EquilibriumConfig EquilibriumConfig::build(ReducedGame game, std::optional<std::vector<double>> mu, double delta,
                                           std::optional<std::vector<double>> v0, const EngineOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  EfficientFrontier frontier = make_frontier(game, options.search);
  DeviationStats stats = compute_stats(game, frontier);
  std::vector<double> floors = mu ? *mu : default_mu(frontier, stats);
  ConditionReport report = check_conditions(game, frontier, stats, floors, delta);

  std::string failed;
  if (!options.relax_incentive && !report.cond1.pass) failed += " Condition 1 (" + report.cond1.witness + ");";
  if (!options.relax_incentive && !report.cond2.pass) failed += " Condition 2 (" + report.cond2.witness + ");";
  if (!report.cond3.pass) failed += " Condition 3 (" + report.cond3.witness + ");";
  if (!report.cond4.pass) failed += " Condition 4 (" + report.cond4.witness + ");";
  if (!report.regularity.regular) failed += " V_mu is not regular;";
  if (!failed.empty()) throw Error(ErrorCode::kConditionsNotMet, "failed:" + failed);

  const std::size_t n = game.players();
  std::vector<double> start(n, 0.0);
  if (v0) {
    start = *v0;
    if (start.size() != n) throw Error(ErrorCode::kDimensionMismatch, "v0 needs one entry per player");
  } else {
    for (const auto& corner : report.regularity.vhat) {
      for (std::size_t k = 0; k < n; ++k) start[k] += corner[k] / static_cast<double>(n);
    }
  }
  const double h = dot(frontier.lambda, start);
  if (std::abs(h - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "v0 is off the efficient hyperplane (lambda . v0 = " + fmt(h) + ")");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (start[k] < floors[k] - kFloorTol) {
      throw Error(ErrorCode::kInvalidArgument, "v0 lies below the floor for player " + std::to_string(k + 1));
    }
  }
  for (double t : barycentric(frontier, start)) {
    if (t < -1e-9) throw Error(ErrorCode::kInvalidArgument, "v0 lies outside the efficient set");
  }

  return EquilibriumConfig{std::move(game), std::move(frontier), std::move(stats), std::move(floors),
                           delta, std::move(start), std::move(report)};
}

double indicator(const EquilibriumConfig& config, std::span<const double> v, std::size_t j) {
  const auto& f = config.frontier;
  const std::size_t n = config.players();
  double denom = f.lambda[j] * (f.v_tilde[j][j] - v[j]);
  for (std::size_t k = 0; k < n; ++k) {
    if (k != j) denom += f.lambda[k] * config.stats.alpha_term(j, k) * config.stats.rho_bad[j];
  }
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::kNonpositiveDenominator,
                "indicator denominator for player " + std::to_string(j + 1) + " is " + fmt(denom));
  }
  return f.lambda[j] * (v[j] - config.mu[j]) / denom;
}

std::vector<double> indicators(const EquilibriumConfig& config, std::span<const double> v) {
  std::vector<double> d(config.players());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = indicator(config, v, j);
  return d;
}

std::size_t select_active(std::span<const double> d) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < d.size(); ++j) {
    if (d[j] >= d[best]) best = j;
  }
  return best;
}

std::size_t select_active(const EquilibriumConfig& config, const ContinuationState& state) {
  return select_active(indicators(config, state.v));
}

Continuations continuations(const EquilibriumConfig& config, std::span<const double> v, std::size_t i) {
  const auto& f = config.frontier;
  const std::size_t n = config.players();
  const double delta = config.delta;
  const double rb = config.stats.rho_bad[i];
  const double rg = 1.0 - rb;
  const double scale = 1.0 / delta - 1.0;
  Continuations c{std::vector<double>(n), std::vector<double>(n)};
  double sum_good = 0.0;
  double sum_bad = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double base = f.v_tilde[i][j] + (v[j] - f.v_tilde[i][j]) / delta;
    const double a = config.stats.alpha_term(i, j);
    c.good[j] = base + scale * a * rb;
    c.bad[j] = base - scale * a * rg;
    sum_good += f.lambda[j] * c.good[j];
    sum_bad += f.lambda[j] * c.bad[j];
  }
  c.good[i] = (1.0 - sum_good) / f.lambda[i];
  c.bad[i] = (1.0 - sum_bad) / f.lambda[i];
  return c;
}

double active_continuation_closed_form(const EquilibriumConfig& config, std::span<const double> v, std::size_t i,
                                       Signal s) {
  const auto& f = config.frontier;
  const double delta = config.delta;
  const double rb = config.stats.rho_bad[i];
  double weighted = 0.0;
  for (std::size_t j = 0; j < config.players(); ++j) {
    if (j != i) weighted += f.lambda[j] * config.stats.alpha_term(i, j);
  }
  weighted /= f.lambda[i];
  const double base = f.v_tilde[i][i] + (v[i] - f.v_tilde[i][i]) / delta;
  const double scale = 1.0 / delta - 1.0;
  return s == Signal::kGood ? base - scale * weighted * rb : base + scale * weighted * (1.0 - rb);
}

Plan plan(const EquilibriumConfig& config, const ContinuationState& state) {
  Plan p;
  p.d = indicators(config, state.v);
  p.active = select_active(p.d);
  p.action = config.frontier.a_tilde[p.active];
  p.next = continuations(config, state.v, p.active);
  return p;
}

ContinuationState advance(const EquilibriumConfig& config, const ContinuationState& state, const Plan& p, Signal s) {
  ContinuationState next;
  next.t = state.t + 1;
  next.v = s == Signal::kGood ? p.next.good : p.next.bad;
  next.last_active = static_cast<int>(p.active);
  for (std::size_t k = 0; k < next.v.size(); ++k) {
    if (next.v[k] < config.mu[k] - kFloorTol) {
      throw Error(ErrorCode::kFloorBreach, "period " + std::to_string(state.t) + ": player " +
                                               std::to_string(k + 1) + " continuation " + fmt(next.v[k]) +
                                               " below floor " + fmt(config.mu[k]));
    }
  }
  return next;
}

StepResult step(const EquilibriumConfig& config, const ContinuationState& state, Signal s) {
  StepResult r;
  r.plan = plan(config, state);
  r.next = advance(config, state, r.plan, s);
  return r;
}

SignalSource recorded_signals(std::vector<Signal> signals) {
  return [signals = std::move(signals)](std::size_t t, std::size_t, std::span<const double>) {
    if (t >= signals.size()) {
      throw Error(ErrorCode::kInvalidArgument, "recorded signal sequence is shorter than the run");
    }
    return signals[t];
  };
}

SignalSource sampled_signals(const ReducedGame& game, std::uint64_t seed, std::uint64_t stream) {
  const CounterRng rng(seed, stream);
  return [game, rng](std::size_t t, std::size_t active, std::span<const double> action) {
    return rng.uniform(t) < game.bad_prob(active, action) ? Signal::kBad : Signal::kGood;
  };
}

Trajectory run(const EquilibriumConfig& config, const SignalSource& source, std::size_t periods,
               std::optional<std::vector<double>> start) {
  if (periods == 0) throw Error(ErrorCode::kInvalidArgument, "a run needs at least one period");
  Trajectory tr;
  tr.rows.reserve(periods);
  ContinuationState state;
  state.v = start ? *start : config.v0;
  for (std::size_t t = 0; t < periods; ++t) {
    Plan p = plan(config, state);
    const Signal s = source(t, p.active, p.action);
    ContinuationState next = advance(config, state, p, s);
    tr.rows.push_back(TrajectoryRow{t, p.active, s, state.v, p.d, std::move(p.next)});
    state = std::move(next);
  }
  tr.final_state = std::move(state);
  return tr;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  const std::size_t n = trajectory.final_state.v.size();
  os << "t,active,signal";
  for (std::size_t k = 0; k < n; ++k) os << ",v_" << (k + 1);
  for (std::size_t k = 0; k < n; ++k) os << ",d_" << (k + 1);
  os << '\n';
  os << std::setprecision(17);
  for (const auto& r : trajectory.rows) {
    os << r.t << ',' << (r.active + 1) << ',' << signal_char(r.signal);
    for (double x : r.v) os << ',' << x;
    for (double x : r.d) os << ',' << x;
    os << '\n';
  }
}

double promise_keeping_residual(const EquilibriumConfig& config, std::span<const double> v, std::size_t i,
                                const Continuations& next) {
  const double rb = config.stats.rho_bad[i];
  const double delta = config.delta;
  double worst = 0.0;
  for (std::size_t k = 0; k < config.players(); ++k) {
    const double value = (1.0 - delta) * config.frontier.v_tilde[i][k] +
                         delta * ((1.0 - rb) * next.good[k] + rb * next.bad[k]);
    worst = std::max(worst, std::abs(v[k] - value));
  }
  return worst;
}

double ic_slack(const EquilibriumConfig& config, std::span<const double> v, std::size_t i, const Continuations& next,
                std::size_t j, double aj) {
  const JointAction d = deviate(config.frontier.a_tilde[i], j, aj);
  const double rb = config.game.bad_prob(i, d);
  const double delta = config.delta;
  const double value = (1.0 - delta) * config.game.payoff(j, d) + delta * ((1.0 - rb) * next.good[j] + rb * next.bad[j]);
  return v[j] - value;
}

}  // namespace ppekit
