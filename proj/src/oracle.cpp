#include "ppekit/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ppekit/error.hpp"
#include "ppekit/parallel.hpp"
#include "ppekit/search.hpp"

namespace ppekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZeroRow = 1e-13;
constexpr int kBisections = 64;

enum class RowKind { kFloor, kHull, kIc };

struct Row {
  std::vector<double> a;
  double b = 0.0;
  double norm = 0.0;
  RowKind kind = RowKind::kFloor;
  std::size_t player = 0;
  int signal = 0;  // 0 good, 1 bad; unused for IC rows
  double action = 0.0;
};

struct Affine {
  std::vector<double> coef;
  double c0 = 0.0;
};

// Linear system in t = good-signal continuations of the inactive players.
struct System {
  std::size_t active = 0;
  std::size_t d = 0;
  std::vector<std::size_t> inactive;
  std::vector<double> objective;  // lambda of the inactive players
  std::vector<Row> rows;
  double const_violation = kInfinity;  // smallest rhs among rows with a == 0
  std::vector<double> box_lo;
  std::vector<double> box_hi;
  std::vector<Affine> good;  // per player coordinate
  std::vector<Affine> bad;
};

using Point = std::vector<double>;

System build_system(const ReducedGame& game, const EfficientFrontier& f, const DeviationStats& stats,
                    const std::vector<double>& mu, double delta, const std::vector<double>& v, std::size_t i) {
  const std::size_t n = f.players();
  System s;
  s.active = i;
  s.d = n - 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != i) {
      s.inactive.push_back(k);
      s.objective.push_back(f.lambda[k]);
    }
  }
  const double rb = stats.rho_bad[i];
  const double rg = 1.0 - rb;
  if (!(rb > 0.0 && rb < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "decomposition needs an interior signal probability");
  }

  s.good.assign(n, Affine{std::vector<double>(s.d, 0.0), 0.0});
  for (std::size_t m = 0; m < s.d; ++m) {
    s.good[s.inactive[m]].coef[m] = 1.0;
    s.good[i].coef[m] = -f.lambda[s.inactive[m]] / f.lambda[i];
  }
  s.good[i].c0 = 1.0 / f.lambda[i];
  s.bad.assign(n, Affine{std::vector<double>(s.d, 0.0), 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = f.v_tilde[i][k] + (v[k] - f.v_tilde[i][k]) / delta;
    for (std::size_t m = 0; m < s.d; ++m) s.bad[k].coef[m] = -rg / rb * s.good[k].coef[m];
    s.bad[k].c0 = (ck - rg * s.good[k].c0) / rb;
  }

  auto add = [&s](std::vector<double> a, double b, RowKind kind, std::size_t player, int signal, double action) {
    double norm = 0.0;
    for (double x : a) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < kZeroRow) {
      s.const_violation = std::min(s.const_violation, b);
      return;
    }
    s.rows.push_back(Row{std::move(a), b, norm, kind, player, signal, action});
  };
  auto negated = [](const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (std::size_t m = 0; m < x.size(); ++m) y[m] = -x[m];
    return y;
  };

  // Floors.
  for (std::size_t k = 0; k < n; ++k) {
    add(negated(s.good[k].coef), s.good[k].c0 - mu[k], RowKind::kFloor, k, 0, 0.0);
    add(negated(s.bad[k].coef), s.bad[k].c0 - mu[k], RowKind::kFloor, k, 1, 0.0);
  }

  // Membership in V: barycentric coordinates are nonnegative.
  Eigen::MatrixXd mt(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) mt(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r)) = f.v_tilde[r][c];
  }
  const Eigen::MatrixXd w = mt.inverse();
  for (int sig = 0; sig < 2; ++sig) {
    const auto& g = sig == 0 ? s.good : s.bad;
    for (std::size_t m = 0; m < n; ++m) {
      std::vector<double> a(s.d, 0.0);
      double c0 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double wk = w(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
        for (std::size_t q = 0; q < s.d; ++q) a[q] -= wk * g[k].coef[q];
        c0 += wk * g[k].c0;
      }
      add(std::move(a), c0, RowKind::kHull, m, sig, 0.0);
    }
  }

  // Incentive constraints on the deviation grids plus the recorded witnesses.
  const JointAction& at = f.a_tilde[i];
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> actions = game.actions(j).grid();
    if (j != i) {
      for (double x : {stats.alpha_witness[i][j], stats.beta_witness[i][j]}) {
        if (!std::isnan(x)) actions.push_back(x);
      }
    }
    for (double x : actions) {
      if (x == at[j]) continue;
      const JointAction dev = deviate(at, j, x);
      const double rbd = game.bad_prob(i, dev);
      const double rgd = 1.0 - rbd;
      const double u = game.payoff(j, dev);
      std::vector<double> a(s.d);
      for (std::size_t q = 0; q < s.d; ++q) a[q] = delta * (rgd * s.good[j].coef[q] + rbd * s.bad[j].coef[q]);
      const double c0 = (1.0 - delta) * u + delta * (rgd * s.good[j].c0 + rbd * s.bad[j].c0);
      add(std::move(a), v[j] - c0, RowKind::kIc, j, 0, x);
    }
  }

  // Bounding box: continuations must lie in V, so pad its bounding box.
  for (std::size_t m = 0; m < s.d; ++m) {
    const std::size_t k = s.inactive[m];
    double lo = kInfinity;
    double hi = -kInfinity;
    for (const auto& row : f.v_tilde) {
      lo = std::min(lo, row[k]);
      hi = std::max(hi, row[k]);
    }
    const double pad = 1.0 + (hi - lo);
    s.box_lo.push_back(lo - pad);
    s.box_hi.push_back(hi + pad);
  }
  return s;
}

double objective_of(const System& s, const Point& t) {
  double o = 0.0;
  for (std::size_t m = 0; m < s.d; ++m) o += s.objective[m] * t[m];
  return o;
}

bool better(const System& s, const Point& x, const Point& y) {
  const double ox = objective_of(s, x);
  const double oy = objective_of(s, y);
  if (ox != oy) return ox < oy;
  return x < y;
}

double point_margin(const System& s, const Point& t) {
  double m = s.const_violation;
  for (const auto& r : s.rows) {
    double at = 0.0;
    for (std::size_t q = 0; q < s.d; ++q) at += r.a[q] * t[q];
    m = std::min(m, (r.b - at) / r.norm);
  }
  return m;
}

// Feasible region shifted inward by `shift`; returns the objective-minimizing
// point when nonempty.
std::optional<Point> solve_1d(const System& s, double shift) {
  double lo = s.box_lo[0];
  double hi = s.box_hi[0];
  for (const auto& r : s.rows) {
    const double rhs = (r.b - shift * r.norm) / r.a[0];
    if (r.a[0] > 0.0) {
      hi = std::min(hi, rhs);
    } else {
      lo = std::max(lo, rhs);
    }
  }
  if (lo > hi) return std::nullopt;
  return Point{lo};
}

using Polygon = std::vector<std::array<double, 2>>;

Polygon clip(const Polygon& poly, const std::vector<double>& a, double b) {
  Polygon out;
  const std::size_t m = poly.size();
  out.reserve(m + 1);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& p = poly[k];
    const auto& q = poly[(k + 1) % m];
    const double fp = a[0] * p[0] + a[1] * p[1] - b;
    const double fq = a[0] * q[0] + a[1] * q[1] - b;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

std::optional<Point> solve_2d(const System& s, double shift) {
  Polygon poly{{s.box_lo[0], s.box_lo[1]}, {s.box_hi[0], s.box_lo[1]}, {s.box_hi[0], s.box_hi[1]},
               {s.box_lo[0], s.box_hi[1]}};
  for (const auto& r : s.rows) {
    poly = clip(poly, r.a, r.b - shift * r.norm);
    if (poly.empty()) return std::nullopt;
  }
  Point best{poly[0][0], poly[0][1]};
  for (const auto& p : poly) {
    Point c{p[0], p[1]};
    if (better(s, c, best)) best = c;
  }
  return best;
}

struct GridOutcome {
  double margin = -kInfinity;
  std::optional<Point> point;  // best objective among points with margin >= -tol
};

GridOutcome solve_grid(const System& s, int per_dim, double tol) {
  GridOutcome g;
  std::vector<int> idx(s.d, 0);
  Point t(s.d);
  while (true) {
    for (std::size_t q = 0; q < s.d; ++q) {
      t[q] = s.box_lo[q] + (s.box_hi[q] - s.box_lo[q]) * idx[q] / (per_dim - 1);
    }
    const double m = point_margin(s, t);
    g.margin = std::max(g.margin, m);
    if (m >= -tol && (!g.point || better(s, t, *g.point))) g.point = t;
    std::size_t q = 0;
    while (q < s.d && ++idx[q] == per_dim) idx[q++] = 0;
    if (q == s.d) break;
  }
  return g;
}

std::string row_label(const ReducedGame& game, const Row& r) {
  const std::string who = std::to_string(r.player + 1);
  switch (r.kind) {
    case RowKind::kFloor: return "floor_" + who + (r.signal == 0 ? "_g" : "_b");
    case RowKind::kHull: return "hull_" + who + (r.signal == 0 ? "_g" : "_b");
    case RowKind::kIc: return "ic_" + who + "_" + game.actions(r.player).describe(r.action);
  }
  return "?";
}

void fill_kappas(const ReducedGame& game, const EfficientFrontier& f, const DeviationStats& stats,
                 const std::vector<double>& v, std::size_t i, DecomposabilityResult& out) {
  const std::size_t n = f.players();
  out.kappa_plus.assign(n, kNaN);
  out.kappa_minus.assign(n, kNaN);
  const JointAction& at = f.a_tilde[i];
  const double rb = stats.rho_bad[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double base = f.v_tilde[i][j];
    auto c_of = [&](double x, bool profitable) {
      const JointAction d = deviate(at, j, x);
      const double gain = game.payoff(j, d) - base;
      if (profitable ? !(gain > tol::kStrict) : !(gain < -tol::kStrict)) return kNaN;
      return (1.0 - rb) - (v[j] - base) * (game.bad_prob(i, d) - rb) / gain;
    };
    const Extremum hi = maximize_over(game.actions(j), [&](double x) {
      const double c = c_of(x, true);
      return std::isnan(c) ? -kInfinity : c;
    });
    const Extremum lo = minimize_over(game.actions(j), [&](double x) {
      const double c = c_of(x, false);
      return std::isnan(c) ? kInfinity : c;
    });
    out.kappa_plus[j] = hi.value;
    out.kappa_minus[j] = lo.value;
  }
}

}  // namespace

DecomposabilityResult decompose_with_active(const ReducedGame& game, const EfficientFrontier& frontier,
                                            const DeviationStats& stats, const std::vector<double>& mu,
                                            double delta, const std::vector<double>& v, std::size_t i,
                                            const OracleOptions& options) {
  const std::size_t n = frontier.players();
  if (v.size() != n || mu.size() != n) throw Error(ErrorCode::kDimensionMismatch, "target and mu need n entries");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  const System s = build_system(game, frontier, stats, mu, delta, v, i);
  const double tol = options.feasibility_tol;

  DecomposabilityResult out;
  out.target = v;
  out.profile_margins.assign(n, kNaN);

  std::optional<Point> point;
  double margin = kNaN;
  if (s.d <= 2) {
    auto solve = [&s](double shift) { return s.d == 1 ? solve_1d(s, shift) : solve_2d(s, shift); };
    if (options.compute_margin) {
      Point center(s.d);
      double diam = 0.0;
      for (std::size_t q = 0; q < s.d; ++q) {
        center[q] = 0.5 * (s.box_lo[q] + s.box_hi[q]);
        diam += (s.box_hi[q] - s.box_lo[q]) * (s.box_hi[q] - s.box_lo[q]);
      }
      diam = std::sqrt(diam);
      double lo = point_margin(s, center);
      double hi = lo + diam;
      if (s.const_violation < kInfinity) hi = std::min(hi, std::max(lo, s.const_violation));
      for (int it = 0; it < kBisections && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid > s.const_violation || !solve(mid)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      margin = std::min(lo, s.const_violation);
      if (margin >= -tol) point = solve(std::min(0.0, lo));
    } else if (s.const_violation >= -tol) {
      point = solve(-tol);
      margin = point ? 0.0 : -kInfinity;
    } else {
      margin = s.const_violation;
    }
  } else {
    if (!options.allow_grid_search) {
      throw Error(ErrorCode::kUnsupportedDimension, "exact decomposition supports at most three players");
    }
    const GridOutcome g = solve_grid(s, std::max(options.search_points, 2), tol);
    margin = g.margin;
    point = g.point;
  }

  out.profile_margins[i] = margin;
  out.margin = margin;
  out.feasible = point.has_value() && margin >= -tol;
  if (out.feasible) {
    const Point& t = *point;
    out.active = static_cast<int>(i);
    out.gamma_good.resize(n);
    out.gamma_bad.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double g = s.good[k].c0;
      double b = s.bad[k].c0;
      for (std::size_t q = 0; q < s.d; ++q) {
        g += s.good[k].coef[q] * t[q];
        b += s.bad[k].coef[q] * t[q];
      }
      out.gamma_good[k] = g;
      out.gamma_bad[k] = b;
    }
    std::vector<std::pair<double, std::size_t>> tight;
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
      const Row& row = s.rows[r];
      double at = 0.0;
      for (std::size_t q = 0; q < s.d; ++q) at += row.a[q] * t[q];
      const double slack = (row.b - at) / row.norm;
      if (slack <= 1e-7) tight.emplace_back(slack, r);
    }
    std::sort(tight.begin(), tight.end());
    for (std::size_t k = 0; k < tight.size() && out.binding.size() < 8; ++k) {
      std::string label = row_label(game, s.rows[tight[k].second]);
      if (std::find(out.binding.begin(), out.binding.end(), label) == out.binding.end()) out.binding.push_back(label);
    }
  }
  fill_kappas(game, frontier, stats, v, i, out);
  return out;
}

DecomposabilityResult decomposable(const ReducedGame& game, const EfficientFrontier& frontier,
                                   const DeviationStats& stats, const std::vector<double>& mu, double delta,
                                   const std::vector<double>& v, const OracleOptions& options) {
  const std::size_t n = frontier.players();
  std::optional<DecomposabilityResult> best;
  std::vector<double> margins(n, kNaN);
  for (std::size_t i = 0; i < n; ++i) {
    DecomposabilityResult r = decompose_with_active(game, frontier, stats, mu, delta, v, i, options);
    margins[i] = r.margin;
    const bool take = !best || (r.feasible && !best->feasible) ||
                      (r.feasible == best->feasible && !(r.margin < best->margin));
    if (take) best = std::move(r);
  }
  best->profile_margins = margins;
  return *best;
}

SelfGenerationResult is_self_generating(const ReducedGame& game, const EfficientFrontier& frontier,
                                        const DeviationStats& stats, const std::vector<double>& mu, double delta,
                                        int k, const OracleOptions& options) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "covering grid needs k >= 2");
  const Regularity reg = regularity(frontier, mu);
  if (!reg.regular) throw Error(ErrorCode::kInvalidArgument, "V_mu is not regular");
  const std::size_t n = frontier.players();

  SelfGenerationResult out;
  // Barycentric weights (w_1..w_n)/(k-1) over the corners, lexicographic.
  std::vector<int> w(n, 0);
  const int total = k - 1;
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == n) {
      w[pos] = left;
      std::vector<double> p(n, 0.0);
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t q = 0; q < n; ++q) p[q] += reg.vhat[c][q] * w[c] / static_cast<double>(total);
      }
      out.grid.push_back(std::move(p));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      w[pos] = x;
      rec(pos + 1, left - x);
    }
  };
  rec(0, total);

  out.points = out.grid.size();
  out.results.resize(out.points);
  OracleOptions inner = options;
  inner.compute_margin = true;
  parallel_for(
      out.points,
      [&](std::size_t p) { out.results[p] = decomposable(game, frontier, stats, mu, delta, out.grid[p], inner); },
      options.threads);

  out.self_generating = true;
  std::size_t worst = 0;
  for (std::size_t p = 0; p < out.points; ++p) {
    const auto& r = out.results[p];
    if (!r.feasible) {
      out.self_generating = false;
      ++out.failures;
    }
    const auto& wr = out.results[worst];
    if (r.margin < wr.margin || (r.margin == wr.margin && out.grid[p] < out.grid[worst])) worst = p;
  }
  out.worst_point = out.grid[worst];
  out.worst_margin = out.results[worst].margin;
  return out;
}

void write_oracle_csv(std::ostream& os, const SelfGenerationResult& result) {
  const std::size_t n = result.grid.empty() ? 0 : result.grid[0].size();
  for (std::size_t k = 0; k < n; ++k) os << "v_" << (k + 1) << ',';
  os << "feasible,margin,active,binding\n";
  os << std::setprecision(17);
  for (std::size_t p = 0; p < result.points; ++p) {
    const auto& r = result.results[p];
    for (double x : result.grid[p]) os << x << ',';
    os << (r.feasible ? 1 : 0) << ',' << r.margin << ',' << (r.active >= 0 ? r.active + 1 : 0) << ',';
    for (std::size_t b = 0; b < r.binding.size(); ++b) os << (b ? ";" : "") << r.binding[b];
    os << '\n';
  }
}

TwoPlayerCharacterization two_player(const ReducedGame& game, const EfficientFrontier& frontier,
                                     const DeviationStats& stats) {
  if (frontier.players() != 2) throw Error(ErrorCode::kInvalidArgument, "two_player needs exactly two players");
  TwoPlayerCharacterization c;
  c.prop1[0] = check_prop1(game, frontier, 0);
  c.prop1[1] = check_prop1(game, frontier, 1);
  c.delta_star = kNaN;

  bool cond1 = true;
  for (std::size_t i = 0; i < 2; ++i) {
    const double a = stats.alpha[i][1 - i];
    const double b = stats.beta[i][1 - i];
    if (a > b + tol::kStrict) cond1 = false;
  }
  const bool cond2 = check_cond2(game, frontier, stats, 0).pass && check_cond2(game, frontier, stats, 1).pass;
  c.mu_bar = default_mu(frontier, stats);
  std::ostringstream os;
  os.precision(10);
  if (!cond1 || !cond2) {
    c.kind = TwoPlayerCase::kNoEfficientPPE;
    os << "no efficient PPE payoffs (Condition " << (!cond1 ? 1 : 2) << " fails)";
  } else {
    const double w = dot(frontier.lambda, c.mu_bar);
    if (w > 1.0 + tol::kHyperplane) {
      c.kind = TwoPlayerCase::kNoEfficientPPE;
      c.extreme_points_only = true;
      os << "no efficient PPE payoffs beyond the extreme points (lambda . mu_bar = " << w << " > 1)";
    } else {
      c.kind = TwoPlayerCase::kInterval;
      c.delta_star = w >= 1.0 - tol::kHyperplane ? 1.0 : min_discount(frontier, stats, c.mu_bar);
      os << "E = {v in V : v >= (" << c.mu_bar[0] << ", " << c.mu_bar[1] << ")} for delta >= " << c.delta_star;
    }
  }
  if (c.prop1[0] || c.prop1[1]) {
    os << "; extreme point(s) supported for every delta:";
    for (std::size_t i = 0; i < 2; ++i) {
      if (c.prop1[i]) os << " v~" << (i + 1);
    }
  }
  c.description = os.str();
  return c;
}

namespace {

// Largest interval [lo, hi] of v_1 values (on the frontier) that is a fixed
// point of the decomposition operator, searching inside `lo`..`hi`. When
// B(W) splits into several runs, the fixed point (an interval) lies inside one
// of them, so each run is followed separately.
struct SegmentSearch {
  const ReducedGame& game;
  const EfficientFrontier& frontier;
  const DeviationStats& stats;
  double delta;
  OracleOptions options;
  std::size_t max_iterations;
  std::size_t iterations = 0;
  bool exhausted = false;

  std::vector<double> point(double v1) const {
    const auto& lam = frontier.lambda;
    return {v1, (1.0 - lam[0] * v1) / lam[1]};
  }

  std::vector<double> floors(double lo, double hi) const { return {lo, point(hi)[1]}; }

  bool ok(double lo, double hi, double x) const {
    return decomposable(game, frontier, stats, floors(lo, hi), delta, point(x), options).feasible;
  }

  // Fixed interval inside [lo, hi], or nullopt.
  std::optional<std::pair<double, double>> solve(double lo, double hi, int depth) {
    constexpr int kScan = 64;
    while (true) {
      if (hi < lo - 1e-12) return std::nullopt;
      if (++iterations > max_iterations) {
        exhausted = true;
        return std::make_pair(lo, hi);
      }
      std::vector<double> xs(kScan + 1);
      std::vector<bool> good(kScan + 1);
      for (int s = 0; s <= kScan; ++s) {
        xs[s] = s == kScan ? hi : lo + (hi - lo) * s / kScan;
        good[s] = ok(lo, hi, xs[s]);
      }
      // Runs of feasible scan points, with their edges refined by bisection.
      std::vector<std::pair<double, double>> runs;
      for (int s = 0; s <= kScan;) {
        if (!good[s]) {
          ++s;
          continue;
        }
        int e = s;
        while (e + 1 <= kScan && good[e + 1]) ++e;
        double a = xs[s];
        if (s > 0) {
          double f = xs[s - 1];
          for (int it = 0; it < kBisections; ++it) {
            const double m = 0.5 * (f + a);
            (ok(lo, hi, m) ? a : f) = m;
          }
        }
        double b = xs[e];
        if (e < kScan) {
          double f = xs[e + 1];
          for (int it = 0; it < kBisections; ++it) {
            const double m = 0.5 * (b + f);
            (ok(lo, hi, m) ? b : f) = m;
          }
        }
        runs.emplace_back(a, b);
        s = e + 1;
      }
      if (runs.empty()) return std::nullopt;
      if (runs.size() > 1) {
        if (depth > 8) return std::nullopt;
        std::optional<std::pair<double, double>> best;
        for (const auto& r : runs) {
          auto sub = solve(r.first, r.second, depth + 1);
          if (sub && (!best || sub->second - sub->first > best->second - best->first)) best = sub;
        }
        return best;
      }
      const double change = std::max(std::abs(runs[0].first - lo), std::abs(runs[0].second - hi));
      lo = runs[0].first;
      hi = runs[0].second;
      if (change < 1e-13) return std::make_pair(lo, hi);
    }
  }
};

}  // namespace

EfficientSet efficient_payoff_set(const ReducedGame& game, const EfficientFrontier& frontier,
                                  const DeviationStats& stats, double delta, std::size_t max_iterations,
                                  const OracleOptions& options) {
  if (frontier.players() != 2) throw Error(ErrorCode::kInvalidArgument, "efficient_payoff_set needs two players");
  SegmentSearch search{game, frontier, stats, delta, options, max_iterations};
  search.options.compute_margin = false;
  const auto& lam = frontier.lambda;
  const double lo = std::min(frontier.v_tilde[0][0], frontier.v_tilde[1][0]);
  const double low2 = std::min(frontier.v_tilde[0][1], frontier.v_tilde[1][1]);
  const double hi = (1.0 - lam[1] * low2) / lam[0];

  EfficientSet out;
  const auto found = search.solve(lo, hi, 0);
  out.iterations = search.iterations;
  out.converged = !search.exhausted;
  if (!found) return out;
  out.empty = false;
  out.floors = search.floors(found->first, found->second);
  out.low = search.point(found->first);
  out.high = search.point(found->second);
  return out;
}

}  // namespace ppekit
