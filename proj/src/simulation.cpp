#include "ppekit/simulation.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ppekit/error.hpp"
#include "ppekit/parallel.hpp"
#include "ppekit/rng.hpp"

namespace ppekit {

namespace {

std::vector<double> deviation_grid(const ActionSpace& space, int points) {
  return space.is_finite() ? space.grid() : space.grid(points);
}

void mean_and_stderr(const std::vector<EpisodeResult>& eps, std::size_t k, double& mean, double& se) {
  const std::size_t e = eps.size();
  double s = 0.0;
  for (const auto& r : eps) s += r.payoff[k];
  mean = s / static_cast<double>(e);
  double ss = 0.0;
  for (const auto& r : eps) ss += (r.payoff[k] - mean) * (r.payoff[k] - mean);
  se = e > 1 ? std::sqrt(ss / static_cast<double>(e - 1) / static_cast<double>(e)) : 0.0;
}

std::vector<EpisodeResult> run_episodes(const EquilibriumConfig& config, const std::optional<DeviationPolicy>& policy,
                                        const SimOptions& options) {
  if (options.episodes == 0 || options.horizon == 0) {
    throw Error(ErrorCode::kInvalidArgument, "episodes and horizon must be positive");
  }
  const double range = payoff_range(config);
  const double eps = std::isnan(options.eps_trunc) ? 1e-9 * range : options.eps_trunc;
  const double tail = std::pow(config.delta, static_cast<double>(options.horizon)) * range;
  if (tail > eps) {
    std::ostringstream os;
    os << "delta^T * range = " << tail << " exceeds " << eps << " (T = " << options.horizon << ")";
    throw Error(ErrorCode::kTruncationTooCoarse, os.str());
  }
  std::vector<EpisodeResult> out(options.episodes);
  parallel_for(
      options.episodes,
      [&](std::size_t e) {
        out[e] = simulate_episode(config, policy, options.seed, e, options.horizon, options.myopic_points);
      },
      options.threads);
  return out;
}

}  // namespace

std::string DeviationPolicy::describe(const ReducedGame& game) const {
  const std::string who = std::to_string(deviator + 1);
  switch (kind) {
    case PolicyKind::kCompliance: return "compliance:" + who;
    case PolicyKind::kStationary: return "stationary:" + who + ":" + game.actions(deviator).describe(action);
    case PolicyKind::kOneShot: return "oneshot:" + who + ":" + game.actions(deviator).describe(action);
    case PolicyKind::kMyopic: return "myopic:" + who;
  }
  return "?";
}

double payoff_range(const EquilibriumConfig& config) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const auto& g = config.game;
  for (const auto& at : config.frontier.a_tilde) {
    for (std::size_t j = 0; j < g.players(); ++j) {
      for (double x : deviation_grid(g.actions(j), 21)) {
        for (double u : g.payoffs(deviate(at, j, x))) {
          lo = std::min(lo, u);
          hi = std::max(hi, u);
        }
      }
    }
  }
  return hi - lo;
}

EpisodeResult simulate_episode(const EquilibriumConfig& config, const std::optional<DeviationPolicy>& policy,
                               std::uint64_t seed, std::size_t episode, std::size_t horizon, int myopic_points) {
  const std::size_t n = config.players();
  const CounterRng rng(seed, episode);
  EpisodeResult r;
  r.payoff.assign(n, 0.0);
  r.seed = seed;
  r.episode = episode;
  std::uint64_t digest = mix64(seed ^ mix64(episode));
  std::vector<double> myopic_grid;
  if (policy && policy->kind == PolicyKind::kMyopic) {
    myopic_grid = deviation_grid(config.game.actions(policy->deviator), myopic_points);
  }

  ContinuationState state;
  state.v = config.v0;
  double weight = 1.0 - config.delta;
  for (std::size_t t = 0; t < horizon; ++t) {
    const Plan p = plan(config, state);
    JointAction played = p.action;
    if (policy) {
      const std::size_t j = policy->deviator;
      switch (policy->kind) {
        case PolicyKind::kCompliance: break;
        case PolicyKind::kStationary: played[j] = policy->action; break;
        case PolicyKind::kOneShot:
          if (t == 0) played[j] = policy->action;
          break;
        case PolicyKind::kMyopic: {
          double best = config.game.payoff(j, played);
          for (double x : myopic_grid) {
            const double u = config.game.payoff(j, deviate(p.action, j, x));
            if (u > best) {
              best = u;
              played[j] = x;
            }
          }
          break;
        }
      }
    }
    const double rb = config.game.bad_prob(p.active, played);
    const Signal s = rng.uniform(t) < rb ? Signal::kBad : Signal::kGood;
    const Payoffs u = config.game.payoffs(played);
    for (std::size_t k = 0; k < n; ++k) r.payoff[k] += weight * u[k];
    weight *= config.delta;
    r.expected_bad += rb;
    if (s == Signal::kBad) ++r.bad_signals;
    digest = mix64(digest ^ (p.active * 2 + (s == Signal::kBad ? 1 : 0)));
    for (double x : played) digest = mix64(digest ^ std::bit_cast<std::uint64_t>(x));
    // The compliant players only see the public signal, so the engine state
    // follows it whatever the deviator did; floors are not enforced off path.
    state.t += 1;
    state.v = s == Signal::kGood ? p.next.good : p.next.bad;
    state.last_active = static_cast<int>(p.active);
  }
  r.digest = digest;
  return r;
}

SimSummary simulate(const EquilibriumConfig& config, const SimOptions& options) {
  std::vector<EpisodeResult> eps = run_episodes(config, std::nullopt, options);
  const std::size_t n = config.players();
  SimSummary s;
  s.episodes = options.episodes;
  s.horizon = options.horizon;
  s.mean.resize(n);
  s.stderr_.resize(n);
  for (std::size_t k = 0; k < n; ++k) mean_and_stderr(eps, k, s.mean[k], s.stderr_[k]);
  std::size_t bad = 0;
  double expected = 0.0;
  for (const auto& r : eps) {
    bad += r.bad_signals;
    expected += r.expected_bad;
  }
  const double periods = static_cast<double>(options.episodes) * static_cast<double>(options.horizon);
  s.bad_rate = static_cast<double>(bad) / periods;
  s.expected_bad_rate = expected / periods;
  if (options.keep_episodes) s.per_episode = std::move(eps);
  return s;
}

DeviationResult deviation_value(const EquilibriumConfig& config, const DeviationPolicy& policy,
                                const SimOptions& options) {
  if (policy.deviator >= config.players()) throw Error(ErrorCode::kInvalidArgument, "deviator out of range");
  const std::vector<EpisodeResult> dev = run_episodes(config, policy, options);
  const std::vector<EpisodeResult> comp = run_episodes(config, std::nullopt, options);
  DeviationResult r;
  r.policy = policy;
  mean_and_stderr(dev, policy.deviator, r.deviator_mean, r.deviator_stderr);
  mean_and_stderr(comp, policy.deviator, r.compliant_mean, r.compliant_stderr);
  r.gain = r.deviator_mean - r.compliant_mean;
  r.pooled_stderr = std::sqrt(r.deviator_stderr * r.deviator_stderr + r.compliant_stderr * r.compliant_stderr);
  return r;
}

std::vector<DeviationPolicy> stationary_policies(const EquilibriumConfig& config, std::size_t j, int points) {
  std::vector<DeviationPolicy> out;
  for (double x : deviation_grid(config.game.actions(j), points)) {
    out.push_back(DeviationPolicy{j, PolicyKind::kStationary, x});
  }
  return out;
}

void write_episodes_csv(std::ostream& os, const SimSummary& summary) {
  const std::size_t n = summary.mean.size();
  os << "episode";
  for (std::size_t k = 0; k < n; ++k) os << ",payoff_" << (k + 1);
  os << ",bad_signals,digest\n";
  os << std::setprecision(17);
  for (const auto& r : summary.per_episode) {
    os << r.episode;
    for (double x : r.payoff) os << ',' << x;
    os << ',' << r.bad_signals << ',' << std::hex << r.digest << std::dec << '\n';
  }
}

}  // namespace ppekit
