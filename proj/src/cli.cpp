#include "ppekit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "ppekit/analysis.hpp"
#include "ppekit/config.hpp"
#include "ppekit/engine.hpp"
#include "ppekit/error.hpp"
#include "ppekit/oracle.hpp"
#include "ppekit/simulation.hpp"

namespace ppekit {

namespace {

struct Flags {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> episodes;
  std::optional<std::size_t> horizon;
  std::optional<int> grid;
  bool strict_support = false;
};

bool input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyActionSpace:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kParseError:
    case ErrorCode::kUnknownSweepParameter:
      return true;
    default:
      return false;
  }
}

// CSV goes to <out>/<name> when --out is set, otherwise to `fallback`.
template <class Fn>
void emit(const Flags& f, const std::string& name, std::ostream& fallback, Fn&& write) {
  if (f.out_dir.empty()) {
    write(fallback);
    return;
  }
  std::filesystem::create_directories(f.out_dir);
  const auto path = std::filesystem::path(f.out_dir) / name;
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  write(os);
}

double require_delta(const RunConfig& c) {
  if (std::isnan(c.delta)) throw Error(ErrorCode::kInvalidArgument, c.path + ": [analysis] delta is required");
  return c.delta;
}

EquilibriumConfig equilibrium(const RunConfig& c) {
  EngineOptions opt;
  opt.relax_incentive = c.relax_incentive;
  opt.search = c.search;
  return EquilibriumConfig::build(build_game(c), c.mu, require_delta(c), c.v0, opt);
}

void print_check(std::ostream& out, const char* name, const AssumptionCheck& a) {
  out << name << ": " << (a.pass ? "pass" : "FAIL") << " (" << format_number(a.value);
  if (!a.witness.empty()) out << "; " << a.witness;
  out << ")\n";
}

int cmd_validate(const Flags& f, const RunConfig& c, std::ostream& out) {
  int code = 0;
  std::optional<ReducedGame> game;
  try {
    game = build_game(c, true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParameterConstraintViolated) throw;
    out << "parameter constraints: FAIL (" << e.what() << ")\n";
    code = 1;
    game = build_game(c, false);
  }
  ValidationOptions opt;
  opt.strict_support = f.strict_support || c.strict_support;
  opt.search = c.search;
  const ValidationReport r = validate_assumptions(*game, opt);
  if (!r.failure.empty()) out << "frontier: " << r.failure << '\n';
  print_check(out, "A1", r.a1);
  print_check(out, "A2", r.a2);
  print_check(out, "A3", r.a3);
  print_check(out, "A4", r.a4);
  out << "bad-signal support: [" << format_number(r.min_bad) << ", " << format_number(r.max_bad) << "]\n";
  if (!r.all_pass()) code = 1;
  out << (code == 0 ? "valid\n" : "invalid\n");
  return code;
}

int cmd_analyze(const Flags& f, const RunConfig& c, std::ostream& out) {
  const ReducedGame game = build_game(c);
  const AnalysisResult r = analyze(game, c.mu, c.delta, c.search);
  write_analysis_summary(out, r);
  if (!f.out_dir.empty()) emit(f, "analysis.csv", out, [&](std::ostream& os) { write_analysis_csv(os, game, r); });
  return r.report.all_pass() && r.report.regularity.regular ? 0 : 1;
}

int cmd_run(const Flags& f, const RunConfig& c, std::ostream& out) {
  const EquilibriumConfig eq = equilibrium(c);
  const std::uint64_t seed = f.seed.value_or(c.run_seed);
  SignalSource source;
  std::size_t periods = c.periods;
  if (c.signals == "sampled") {
    source = sampled_signals(eq.game, seed, 0);
  } else {
    std::vector<Signal> s;
    for (char ch : c.signals) s.push_back(ch == 'g' ? Signal::kGood : Signal::kBad);
    periods = std::min(periods, s.size());
    source = recorded_signals(std::move(s));
  }
  const Trajectory t = run(eq, source, periods);
  emit(f, "trajectory.csv", out, [&](std::ostream& os) { write_trajectory_csv(os, t); });
  return 0;
}

int cmd_simulate(const Flags& f, const RunConfig& c, std::ostream& out) {
  const EquilibriumConfig eq = equilibrium(c);
  SimOptions opt = c.sim;
  if (f.seed) opt.seed = *f.seed;
  if (f.episodes) opt.episodes = *f.episodes;
  if (f.horizon) opt.horizon = *f.horizon;
  std::vector<DeviationPolicy> policies = parse_policies(c.deviations, eq.game);
  if (policies.empty()) {
    for (std::size_t j = 0; j < eq.players(); ++j) {
      for (auto& p : stationary_policies(eq, j)) policies.push_back(p);
    }
  }
  const SimSummary s = simulate(eq, opt);
  out << "episodes: " << s.episodes << ", horizon: " << s.horizon << '\n';
  for (std::size_t k = 0; k < s.mean.size(); ++k) {
    out << "player " << (k + 1) << ": mean " << format_number(s.mean[k]) << ", stderr "
        << format_number(s.stderr_[k]) << ", target " << format_number(eq.v0[k]) << '\n';
  }
  out << "bad-signal rate: " << format_number(s.bad_rate) << " (expected " << format_number(s.expected_bad_rate)
      << ")\n";
  std::vector<DeviationResult> results;
  bool pass = true;
  for (const auto& p : policies) {
    results.push_back(deviation_value(eq, p, opt));
    if (results.back().gain > 3.0 * results.back().pooled_stderr) pass = false;
  }
  emit(f, "simulate.csv", out, [&](std::ostream& os) {
    os << "policy,deviator,deviator_mean,compliant_mean,gain,pooled_stderr,significant\n";
    for (const auto& r : results) {
      os << r.policy.describe(eq.game) << ',' << (r.policy.deviator + 1) << ',' << format_number(r.deviator_mean)
         << ',' << format_number(r.compliant_mean) << ',' << format_number(r.gain) << ','
         << format_number(r.pooled_stderr) << ',' << (r.gain > 3.0 * r.pooled_stderr ? 1 : 0) << '\n';
    }
  });
  out << (pass ? "no profitable deviation detected\n" : "profitable deviation detected\n");
  return pass ? 0 : 1;
}

int cmd_sweep(const Flags& f, const RunConfig& c, std::ostream& out) {
  if (c.sweep_parameter.empty()) throw Error(ErrorCode::kInvalidArgument, c.path + ": missing [sweep] section");
  const std::vector<double> values = linspace(c.sweep_from, c.sweep_to, c.sweep_steps);
  std::vector<SweepRow> rows;
  if (c.sweep_parameter == "delta") {
    rows = sweep_delta(build_game(c), values, c.search);
  } else if (c.sweep_parameter == "eta") {
    rows = sweep_eta(build_game(c), values, c.search);
  } else {
    rows = sweep_game_parameter(game_factory(c, c.sweep_parameter), values, c.search);
  }
  emit(f, "sweep.csv", out, [&](std::ostream& os) { write_sweep_csv(os, c.sweep_parameter, rows); });
  return 0;
}

int cmd_oracle(const Flags& f, const RunConfig& c, std::ostream& out) {
  const ReducedGame game = build_game(c);
  const EfficientFrontier frontier = make_frontier(game, c.search);
  const DeviationStats stats = compute_stats(game, frontier);
  const std::vector<double> mu = c.mu ? *c.mu : default_mu(frontier, stats);
  const double delta = require_delta(c);
  const int k = f.grid.value_or(c.grid);
  if (!regularity(frontier, mu).regular) {
    out << "V_mu is not regular\n";
    return 1;
  }
  const SelfGenerationResult r = is_self_generating(game, frontier, stats, mu, delta, k);
  out << "points: " << r.points << ", failures: " << r.failures << ", worst margin: " << format_number(r.worst_margin)
      << '\n';
  out << (r.self_generating ? "self-generating\n" : "not self-generating\n");
  emit(f, "oracle.csv", out, [&](std::ostream& os) { write_oracle_csv(os, r); });
  return r.self_generating ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Efficient perfect public equilibria of repeated games with two-signal monitoring"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "INI configuration file")->required();
  app.add_option("--out", f.out_dir, "directory for CSV output");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--episodes", f.episodes, "simulation episodes")->check(CLI::PositiveNumber);
  app.add_option("--horizon", f.horizon, "simulation horizon")->check(CLI::PositiveNumber);
  app.add_option("--grid", f.grid, "covering grid points per edge")->check(CLI::Range(2, 100000));
  app.add_flag("--strict-support", f.strict_support, "check full support on every profile");

  std::string which;
  for (const char* name : {"validate", "analyze", "run", "simulate", "sweep", "oracle"}) {
    app.add_subcommand(name)->callback([&which, name] { which = name; });
  }
  static const std::map<std::string, std::string> help{
      {"validate", "check the standing assumptions"},
      {"analyze", "alpha/beta, floors, discount bound and conditions"},
      {"run", "trajectory of the equilibrium construction"},
      {"simulate", "Monte Carlo payoffs and deviation gains"},
      {"sweep", "largest achievable fraction over a parameter range"},
      {"oracle", "check self-generation on a covering grid"}};
  for (auto* sub : app.get_subcommands({})) sub->description(help.at(sub->get_name()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const RunConfig c = load_config(f.config);
    if (which == "validate") return cmd_validate(f, c, out);
    if (which == "analyze") return cmd_analyze(f, c, out);
    if (which == "run") return cmd_run(f, c, out);
    if (which == "simulate") return cmd_simulate(f, c, out);
    if (which == "sweep") return cmd_sweep(f, c, out);
    if (which == "oracle") return cmd_oracle(f, c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ppekit
