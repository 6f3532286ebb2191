#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <optional>

#include "ppekit/analysis.hpp"
#include "ppekit/builders.hpp"
#include "ppekit/config.hpp"
#include "ppekit/engine.hpp"
#include "ppekit/error.hpp"
#include "ppekit/oracle.hpp"
#include "ppekit/simulation.hpp"

namespace py = pybind11;
using namespace ppekit;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// inf/nan pass through as Python floats; diagonal entries become None.
py::list matrix(const std::vector<std::vector<double>>& m) {
  py::list out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (i == j) row.append(py::none());
      else row.append(m[i][j]);
    }
    out.append(row);
  }
  return out;
}

py::dict check(const ConditionCheck& c) {
  py::dict d;
  d["pass"] = c.pass;
  d["margin"] = c.margin;
  d["witness"] = c.witness;
  return d;
}

py::dict assumption(const AssumptionCheck& a) {
  py::dict d;
  d["pass"] = a.pass;
  d["value"] = a.value;
  d["witness"] = a.witness;
  return d;
}

py::dict sweep_row(const SweepRow& r) {
  py::dict d;
  d["value"] = r.value;
  d["fraction"] = r.fraction;
  d["delta_min"] = r.delta_min;
  d["status"] = r.status;
  return d;
}

py::list sweep_rows(const std::vector<SweepRow>& rows) {
  py::list out;
  for (const auto& r : rows) out.append(sweep_row(r));
  return out;
}

py::dict validate(const ReducedGame& g, bool strict_support) {
  ValidationOptions opt;
  opt.strict_support = strict_support;
  const ValidationReport r = validate_assumptions(g, opt);
  py::dict d;
  d["a1"] = assumption(r.a1);
  d["a2"] = assumption(r.a2);
  d["a3"] = assumption(r.a3);
  d["a4"] = assumption(r.a4);
  d["all_pass"] = r.all_pass();
  d["failure"] = r.failure;
  return d;
}

py::dict analyze_game(const ReducedGame& g, std::optional<std::vector<double>> mu, double delta) {
  const AnalysisResult r = analyze(g, mu, delta);
  py::dict d;
  d["lambda"] = r.frontier.lambda;
  d["v_tilde"] = r.frontier.v_tilde;
  d["alpha"] = matrix(r.stats.alpha);
  d["beta"] = matrix(r.stats.beta);
  d["rho_bad"] = r.stats.rho_bad;
  d["mu"] = r.report.mu;
  d["mu_min"] = r.report.mu_min;
  d["delta_min"] = r.report.delta_min;
  d["weighted_mu"] = r.report.weighted_mu;
  d["cond1"] = check(r.report.cond1);
  d["cond2"] = check(r.report.cond2);
  d["cond3"] = check(r.report.cond3);
  d["cond4"] = check(r.report.cond4);
  d["regular"] = r.report.regularity.regular;
  d["prop1"] = r.prop1;
  if (r.two_player) d["two_player"] = r.two_player->description;
  return d;
}

py::dict run_engine(const EquilibriumConfig& c, std::size_t periods, std::uint64_t seed,
                    std::optional<std::string> signals) {
  SignalSource source = sampled_signals(c.game, seed);
  if (signals) {
    std::vector<Signal> s;
    for (char ch : *signals) {
      if (ch != 'g' && ch != 'b') throw Error(ErrorCode::kInvalidArgument, "signals must be g or b");
      s.push_back(ch == 'g' ? Signal::kGood : Signal::kBad);
    }
    source = recorded_signals(std::move(s));
  }
  const Trajectory t = run(c, source, periods);
  py::list active, sig, v, d;
  for (const auto& row : t.rows) {
    active.append(row.active + 1);
    sig.append(std::string(1, signal_char(row.signal)));
    v.append(row.v);
    d.append(row.d);
  }
  py::dict out;
  out["active"] = active;
  out["signal"] = sig;
  out["v"] = v;
  out["d"] = d;
  out["final"] = t.final_state.v;
  return out;
}

py::dict decomposition(const DecomposabilityResult& r) {
  py::dict d;
  d["feasible"] = r.feasible;
  d["active"] = r.active < 0 ? py::object(py::none()) : py::object(py::int_(r.active + 1));
  d["gamma_good"] = r.gamma_good;
  d["gamma_bad"] = r.gamma_bad;
  d["margin"] = r.margin;
  d["binding"] = r.binding;
  return d;
}

}  // namespace

PYBIND11_MODULE(ppekit, m) {
  m.doc() = "Efficient perfect public equilibria of repeated games with two public signals";

  py::register_exception<Error>(m, "PpekitError");

  py::class_<ReducedGame>(m, "Game")
      .def_property_readonly("name", &ReducedGame::name)
      .def_property_readonly("players", &ReducedGame::players)
      .def("payoffs", [](const ReducedGame& g, std::vector<double> a) { return g.payoffs(a); })
      .def("bad_prob", [](const ReducedGame& g, std::size_t label, std::vector<double> a) {
        return g.bad_prob(label - 1, a);
      }, py::arg("label"), py::arg("a"), "bad-signal probability under player `label`'s labeling (1-based)")
      .def("__repr__", [](const ReducedGame& g) {
        return "<Game " + g.name() + " with " + std::to_string(g.players()) + " players>";
      });

  m.def("modified_pd", [](double B, double b, double c, double p, double q, double r, bool check) {
    return make_modified_pd(PdParams{B, b, c, p, q, r}, check);
  }, py::arg("B") = 4.0, py::arg("b") = 1.0, py::arg("c") = 1.5, py::arg("p") = 0.9, py::arg("q") = 0.8,
        py::arg("r") = 0.2, py::arg("check") = true);

  m.def("contest", [](std::size_t n, double R, double eta, double kappa, double c, int resolution) {
    return make_contest(ContestParams{n, R, eta, kappa, c, resolution});
  }, py::arg("n") = 2, py::arg("R") = 1.0, py::arg("eta") = 0.9, py::arg("kappa") = 0.6, py::arg("c") = 0.2,
        py::arg("resolution") = 1001);

  m.def("mm1", [](std::size_t n, double chi, double eps, double p, double d0, int resolution) {
    return make_mm1(Mm1Params{n, chi, eps, p, d0, resolution});
  }, py::arg("n") = 3, py::arg("chi") = 1.0, py::arg("eps") = 0.3, py::arg("p") = 1.0, py::arg("d0") = 2.0,
        py::arg("resolution") = 1001);

  m.def("table3", &make_table3);
  m.def("custom_matrix", &make_custom_matrix, py::arg("name"), py::arg("labels"), py::arg("payoffs"),
        py::arg("bad"));
  m.def("game_from_config", [](const std::string& path) { return build_game(load_config(path)); });

  m.def("validate", &validate, py::arg("game"), py::arg("strict_support") = false);
  m.def("analyze", &analyze_game, py::arg("game"), py::arg("mu") = py::none(), py::arg("delta") = kNaN);

  py::class_<EquilibriumConfig>(m, "Equilibrium")
      .def(py::init([](const ReducedGame& g, double delta, std::optional<std::vector<double>> mu,
                       std::optional<std::vector<double>> v0, bool relax_incentive) {
             EngineOptions opt;
             opt.relax_incentive = relax_incentive;
             return EquilibriumConfig::build(g, mu, delta, v0, opt);
           }),
           py::arg("game"), py::arg("delta"), py::arg("mu") = py::none(), py::arg("v0") = py::none(),
           py::arg("relax_incentive") = false)
      .def_readonly("mu", &EquilibriumConfig::mu)
      .def_readonly("delta", &EquilibriumConfig::delta)
      .def_readonly("v0", &EquilibriumConfig::v0)
      .def("run", &run_engine, py::arg("periods"), py::arg("seed") = 1, py::arg("signals") = py::none())
      .def("simulate", [](const EquilibriumConfig& c, std::size_t episodes, std::size_t horizon, std::uint64_t seed) {
        SimOptions o;
        o.episodes = episodes;
        o.horizon = horizon;
        o.seed = seed;
        const SimSummary s = [&] {
          py::gil_scoped_release release;
          return simulate(c, o);
        }();
        py::dict d;
        d["mean"] = s.mean;
        d["stderr"] = s.stderr_;
        d["bad_rate"] = s.bad_rate;
        return d;
      }, py::arg("episodes") = 10000, py::arg("horizon") = 120, py::arg("seed") = 1)
      .def("deviation_gain", [](const EquilibriumConfig& c, const std::string& policy, std::size_t episodes,
                                std::size_t horizon, std::uint64_t seed) {
        const auto policies = parse_policies(policy, c.game);
        if (policies.size() != 1) throw Error(ErrorCode::kInvalidArgument, "expected a single policy");
        SimOptions o;
        o.episodes = episodes;
        o.horizon = horizon;
        o.seed = seed;
        const DeviationResult r = [&] {
          py::gil_scoped_release release;
          return deviation_value(c, policies[0], o);
        }();
        py::dict d;
        d["gain"] = r.gain;
        d["pooled_stderr"] = r.pooled_stderr;
        d["deviator_mean"] = r.deviator_mean;
        d["compliant_mean"] = r.compliant_mean;
        return d;
      }, py::arg("policy"), py::arg("episodes") = 10000, py::arg("horizon") = 120, py::arg("seed") = 1);

  m.def("decomposable", [](const ReducedGame& g, std::vector<double> v, double delta,
                           std::optional<std::vector<double>> mu) {
    const EfficientFrontier f = make_frontier(g);
    const DeviationStats s = compute_stats(g, f);
    return decomposition(decomposable(g, f, s, mu ? *mu : default_mu(f, s), delta, v));
  }, py::arg("game"), py::arg("v"), py::arg("delta"), py::arg("mu") = py::none());

  m.def("is_self_generating", [](const ReducedGame& g, double delta, std::optional<std::vector<double>> mu, int k) {
    const EfficientFrontier f = make_frontier(g);
    const DeviationStats s = compute_stats(g, f);
    const SelfGenerationResult r = is_self_generating(g, f, s, mu ? *mu : default_mu(f, s), delta, k);
    py::dict d;
    d["self_generating"] = r.self_generating;
    d["worst_point"] = r.worst_point;
    d["worst_margin"] = r.worst_margin;
    d["failures"] = r.failures;
    d["points"] = r.points;
    return d;
  }, py::arg("game"), py::arg("delta"), py::arg("mu") = py::none(), py::arg("k") = 101);

  m.def("two_player", [](const ReducedGame& g) {
    const EfficientFrontier f = make_frontier(g);
    const TwoPlayerCharacterization c = two_player(g, f, compute_stats(g, f));
    py::dict d;
    d["interval"] = c.kind == TwoPlayerCase::kInterval;
    d["mu_bar"] = c.mu_bar;
    d["delta_star"] = c.delta_star;
    d["extreme_points_only"] = c.extreme_points_only;
    d["description"] = c.description;
    return d;
  });

  m.def("fraction_point", [](const ReducedGame& g) { return sweep_row(fraction_point(g, 0.0)); });
  m.def("sweep_delta", [](const ReducedGame& g, std::vector<double> values) {
    return sweep_rows(sweep_delta(g, values));
  });
  m.def("sweep_eta", [](const ReducedGame& g, std::vector<double> values) { return sweep_rows(sweep_eta(g, values)); });
  m.def("sweep_config", [](const std::string& path) {
    const RunConfig c = load_config(path);
    const std::vector<double> values = linspace(c.sweep_from, c.sweep_to, c.sweep_steps);
    if (c.sweep_parameter == "delta") return sweep_rows(sweep_delta(build_game(c), values, c.search));
    if (c.sweep_parameter == "eta") return sweep_rows(sweep_eta(build_game(c), values, c.search));
    return sweep_rows(sweep_game_parameter(game_factory(c, c.sweep_parameter), values, c.search));
  }, py::arg("path"));
}
