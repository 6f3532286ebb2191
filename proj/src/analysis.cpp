#include "ppekit/analysis.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "ppekit/error.hpp"
#include "ppekit/parallel.hpp"

namespace ppekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRow bad_row(double value, const char* status) { return SweepRow{value, 0.0, kNaN, status}; }

// Everything the sweeps need from one game, computed once.
struct Summary {
  SweepRow row;
  EfficientFrontier frontier;
  DeviationStats stats;
  double eta_min = kNaN;
  double weighted_best = 0.0;  // sum_i lambda_i v~_i^i
  double denom = 0.0;          // D in the discount bound
};

double bound_denominator(const EfficientFrontier& f, const DeviationStats& s) {
  double d = -1.0;
  for (std::size_t i = 0; i < f.players(); ++i) {
    d += f.lambda[i] * f.v_tilde[i][i];
    for (std::size_t j = 0; j < f.players(); ++j) {
      if (j != i) d += f.lambda[j] * s.alpha_term(i, j) * s.rho_bad[i];
    }
  }
  return d;
}

std::vector<double> scaled_floor(const EfficientFrontier& f, double eta) {
  std::vector<double> mu(f.players());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = eta * f.v_tilde[i][i];
  return mu;
}

Summary summarize(const ReducedGame& game, double value, const ProfileSearchOptions& search) {
  Summary s;
  s.row = bad_row(value, "degenerate");
  try {
    s.frontier = make_frontier(game, search);
    for (std::size_t i = 0; i < game.players(); ++i) {
      const double rb = game.bad_prob(i, s.frontier.a_tilde[i]);
      if (!(rb > 0.0 && rb < 1.0)) return s;
    }
    s.stats = compute_stats(game, s.frontier);
  } catch (const Error&) {
    return s;
  }
  const std::size_t n = game.players();
  const std::vector<double> bound = mu_min(s.frontier, s.stats);
  double eta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(bound[i])) continue;
    eta = std::max(eta, bound[i] / s.frontier.v_tilde[i][i]);
  }
  s.eta_min = eta;
  s.denom = bound_denominator(s.frontier, s.stats);
  for (std::size_t i = 0; i < n; ++i) s.weighted_best += s.frontier.lambda[i] * s.frontier.v_tilde[i][i];
  if (!(s.denom > 0.0)) return s;

  const std::vector<double> mu = scaled_floor(s.frontier, eta);
  const double w = dot(s.frontier.lambda, mu);
  if (eta >= 1.0 || w >= 1.0 - tol::kHyperplane) {
    s.row = bad_row(value, "infeasible");
    return s;
  }
  s.row.delta_min = min_discount(s.frontier, s.stats, mu);
  s.row.fraction = 1.0 - eta;
  const ConditionReport r = check_conditions(game, s.frontier, s.stats, mu, kNaN);
  if (!r.cond1.pass) {
    s.row.status = "cond1_fail";
  } else if (!r.cond2.pass) {
    s.row.status = "cond2_fail";
  } else {
    s.row.status = "ok";
  }
  return s;
}

bool has_bound(const Summary& s) { return s.row.status != "degenerate" && s.row.status != "infeasible"; }

}  // namespace

AnalysisResult analyze(const ReducedGame& game, const std::optional<std::vector<double>>& mu, double delta,
                       const ProfileSearchOptions& search) {
  AnalysisResult r;
  r.frontier = make_frontier(game, search);
  r.stats = compute_stats(game, r.frontier);
  const std::vector<double> floors = mu ? *mu : default_mu(r.frontier, r.stats);
  r.report = check_conditions(game, r.frontier, r.stats, floors, delta);
  for (std::size_t i = 0; i < game.players(); ++i) r.prop1.push_back(check_prop1(game, r.frontier, i));
  if (game.players() == 2) r.two_player = two_player(game, r.frontier, r.stats);
  return r;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_analysis_csv(std::ostream& os, const ReducedGame& game, const AnalysisResult& r) {
  const std::size_t n = game.players();
  os << "row,i,j,alpha,alpha_witness,beta,beta_witness,mu_min,delta_min,cond1_margin,cond2_margin,cond3_margin,"
        "cond4_margin\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto witness = [&](double x) { return std::isnan(x) ? std::string() : game.actions(j).describe(x); };
      os << "pair," << (i + 1) << ',' << (j + 1) << ',' << format_number(r.stats.alpha[i][j]) << ','
         << witness(r.stats.alpha_witness[i][j]) << ',' << format_number(r.stats.beta[i][j]) << ','
         << witness(r.stats.beta_witness[i][j]) << ",,,,,,\n";
    }
  }
  os << "summary,,,,,,,";
  for (std::size_t i = 0; i < n; ++i) os << (i ? ";" : "") << format_number(r.report.mu_min[i]);
  os << ',' << format_number(r.report.delta_min) << ',' << format_number(r.report.cond1.margin) << ','
     << format_number(r.report.cond2.margin) << ',' << format_number(r.report.cond3.margin) << ','
     << format_number(r.report.cond4.margin) << '\n';
}

void write_analysis_summary(std::ostream& os, const AnalysisResult& r) {
  const auto& rep = r.report;
  const std::size_t n = r.frontier.players();
  os << "lambda:";
  for (double x : r.frontier.lambda) os << ' ' << format_number(x);
  os << "\nmu:";
  for (double x : rep.mu) os << ' ' << format_number(x);
  os << "\nmu_min:";
  for (double x : rep.mu_min) os << ' ' << format_number(x);
  os << "\nlambda.mu: " << format_number(rep.weighted_mu) << '\n';
  const auto line = [&](const char* name, const ConditionCheck& c) {
    os << name << ": " << (c.pass ? "pass" : "FAIL") << " (margin " << format_number(c.margin);
    if (!c.witness.empty()) os << "; " << c.witness;
    os << ")\n";
  };
  line("condition 1", rep.cond1);
  line("condition 2", rep.cond2);
  line("condition 3", rep.cond3);
  line("condition 4", rep.cond4);
  os << "delta_min: " << format_number(rep.delta_min) << '\n';
  os << "regular: " << (rep.regularity.regular ? "yes" : "no") << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    os << "prop1 player " << (i + 1) << ": " << (r.prop1[i] ? "yes" : "no") << '\n';
  }
  if (r.two_player) os << "two-player: " << r.two_player->description << '\n';
}

SweepRow fraction_point(const ReducedGame& game, double value, const ProfileSearchOptions& search) {
  return summarize(game, value, search).row;
}

std::vector<SweepRow> sweep_game_parameter(const std::function<ReducedGame(double)>& make_game,
                                           const std::vector<double>& values, const ProfileSearchOptions& search,
                                           unsigned threads) {
  std::vector<SweepRow> rows(values.size());
  parallel_for(
      values.size(),
      [&](std::size_t k) {
        try {
          rows[k] = fraction_point(make_game(values[k]), values[k], search);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kParameterConstraintViolated) throw;
          rows[k] = bad_row(values[k], "degenerate");
        }
      },
      threads);
  return rows;
}

std::vector<SweepRow> sweep_delta(const ReducedGame& base, const std::vector<double>& values,
                                  const ProfileSearchOptions& search) {
  const Summary s = summarize(base, 0.0, search);
  std::vector<SweepRow> rows;
  for (double delta : values) {
    SweepRow row = s.row;
    row.value = delta;
    if (has_bound(s) && delta < s.row.delta_min - tol::kStrict) {
      row.fraction = 0.0;
      row.status = "delta_below_min";
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> sweep_eta(const ReducedGame& base, const std::vector<double>& values,
                                const ProfileSearchOptions& search) {
  const Summary s = summarize(base, 0.0, search);
  std::vector<SweepRow> rows;
  for (double eta : values) {
    if (s.row.status == "degenerate" || !(s.denom > 0.0)) {
      rows.push_back(bad_row(eta, "degenerate"));
      continue;
    }
    const std::vector<double> mu = scaled_floor(s.frontier, eta);
    if (eta >= 1.0 || dot(s.frontier.lambda, mu) >= 1.0 - tol::kHyperplane) {
      rows.push_back(bad_row(eta, "infeasible"));
      continue;
    }
    SweepRow row{eta, 1.0 - eta, min_discount(s.frontier, s.stats, mu), s.row.status};
    if (row.status == "infeasible") row.status = "ok";
    if (eta < s.eta_min - tol::kStrict) {
      row.fraction = 0.0;
      row.status = "cond3_fail";
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> linspace(double from, double to, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::kInvalidArgument, "a sweep needs at least one step");
  if (steps == 1) return {from};
  std::vector<double> out(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  out.back() = to;
  return out;
}

void write_sweep_csv(std::ostream& os, const std::string& parameter, const std::vector<SweepRow>& rows) {
  os << "parameter,value,fraction,delta_min,status\n";
  for (const auto& r : rows) {
    os << parameter << ',' << format_number(r.value) << ',' << format_number(r.fraction) << ','
       << format_number(r.delta_min) << ',' << r.status << '\n';
  }
}

}  // namespace ppekit
