#include "ppekit/frontier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ppekit/error.hpp"
#include "ppekit/search.hpp"

namespace ppekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd frontier_matrix(const EfficientFrontier& f) {
  const auto n = static_cast<Eigen::Index>(f.players());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = f.v_tilde.at(i).at(j);
  }
  return m;
}

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

// True if `a` lies within one fine grid cell of `center` on every interval
// coordinate and matches it on every finite coordinate.
bool near_profile(const ReducedGame& game, std::span<const double> a, std::span<const double> center) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& s = game.actions(k);
    if (s.is_finite()) {
      if (a[k] != center[k]) return false;
    } else if (std::abs(a[k] - center[k]) >= s.grid_step() * (1.0 - 1e-9)) {
      return false;
    }
  }
  return true;
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

void for_each_joint(const std::vector<std::vector<double>>& grids,
                    const std::function<void(std::span<const double>, std::span<const std::size_t>)>& fn) {
  const std::size_t n = grids.size();
  for (const auto& g : grids) {
    if (g.empty()) return;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = grids[k][0];
  while (true) {
    fn(a, idx);
    std::size_t k = 0;
    while (k < n) {
      if (++idx[k] < grids[k].size()) {
        a[k] = grids[k][idx[k]];
        break;
      }
      idx[k] = 0;
      a[k] = grids[k][0];
      ++k;
    }
    if (k == n) return;
  }
}

std::vector<std::vector<double>> joint_grids(const ReducedGame& game, std::size_t budget) {
  const std::size_t n = game.players();
  double finite_product = 1.0;
  std::size_t interval_dims = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = game.actions(k);
    if (s.is_finite()) {
      finite_product *= static_cast<double>(s.size());
    } else {
      ++interval_dims;
    }
  }
  int per_dim = 2;
  if (interval_dims > 0) {
    const double room = std::max(1.0, static_cast<double>(budget) / finite_product);
    per_dim = static_cast<int>(std::floor(std::pow(room, 1.0 / static_cast<double>(interval_dims)) + 1e-9));
    per_dim = std::max(per_dim, 2);
  }
  std::vector<std::vector<double>> grids;
  grids.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = game.actions(k);
    if (s.is_finite()) {
      grids.push_back(s.grid());
    } else {
      grids.push_back(s.grid(std::min(per_dim, s.resolution())));
    }
  }
  return grids;
}

EfficientFrontier preferred_profiles(const ReducedGame& game, const ProfileSearchOptions& options) {
  const std::size_t n = game.players();
  for (std::size_t k = 0; k < n; ++k) {
    if (game.actions(k).size() == 0) throw Error(ErrorCode::kEmptyActionSpace, "player " + one_based(k));
  }
  const auto grids = joint_grids(game, options.joint_budget);

  std::vector<double> best(n, -kInf);
  std::vector<std::vector<std::size_t>> best_idx(n);
  std::vector<JointAction> best_a(n);
  for_each_joint(grids, [&](std::span<const double> a, std::span<const std::size_t> idx) {
    const Payoffs u = game.payoffs(a);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] > best[i]) {
        best[i] = u[i];
        best_idx[i].assign(idx.begin(), idx.end());
        best_a[i].assign(a.begin(), a.end());
      }
    }
  });

  // A competitor is separated from the incumbent when it differs on a finite
  // coordinate or sits more than one grid cell away on an interval coordinate.
  std::vector<double> runner_up(n, -kInf);
  std::vector<JointAction> runner_a(n);
  for_each_joint(grids, [&](std::span<const double> a, std::span<const std::size_t> idx) {
    const Payoffs u = game.payoffs(a);
    for (std::size_t i = 0; i < n; ++i) {
      bool separated = false;
      for (std::size_t k = 0; k < n && !separated; ++k) {
        const auto d = idx[k] > best_idx[i][k] ? idx[k] - best_idx[i][k] : best_idx[i][k] - idx[k];
        separated = game.actions(k).is_finite() ? d != 0 : d > 1;
      }
      if (separated && u[i] > runner_up[i]) {
        runner_up[i] = u[i];
        runner_a[i].assign(a.begin(), a.end());
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (runner_up[i] >= best[i] - tol::kArgmaxGap) {
      throw Error(ErrorCode::kNonUniqueArgmax,
                  "player " + one_based(i) + " maximizes at both " + game.describe(best_a[i]) + " and " +
                      game.describe(runner_a[i]));
    }
  }

  // Coordinate ascent on the fine grids with golden-section refinement.
  if (!game.all_finite()) {
    for (std::size_t i = 0; i < n; ++i) {
      JointAction& a = best_a[i];
      double value = game.payoff(i, a);
      for (int sweep = 0; sweep < 50; ++sweep) {
        bool improved = false;
        for (std::size_t k = 0; k < n; ++k) {
          const auto& space = game.actions(k);
          if (space.is_finite()) continue;
          JointAction probe = a;
          const Extremum e = maximize_over(space, [&](double x) {
            probe[k] = x;
            return game.payoff(i, probe);
          });
          if (e.found && e.value > value) {
            improved = improved || e.value > value + 1e-15;
            value = e.value;
            a[k] = e.action;
          }
        }
        if (!improved) break;
      }
    }
  }

  EfficientFrontier f;
  f.a_tilde = best_a;
  f.v_tilde.reserve(n);
  for (std::size_t i = 0; i < n; ++i) f.v_tilde.push_back(game.payoffs(best_a[i]));
  return f;
}

double frontier_determinant(const EfficientFrontier& frontier) {
  return frontier_matrix(frontier).determinant();
}

std::vector<double> hyperplane_weights(const EfficientFrontier& frontier) {
  const Eigen::MatrixXd m = frontier_matrix(frontier);
  const auto n = m.rows();
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale *= std::max(m.row(i).norm(), 1e-300);
  const double det = m.determinant();
  if (!(std::abs(det) > tol::kDeterminant * scale)) {
    std::ostringstream os;
    os << "preferred payoff vectors are linearly dependent (det = " << det << ")";
    throw Error(ErrorCode::kSingularFrontier, os.str());
  }
  const Eigen::VectorXd lambda = m.fullPivLu().solve(Eigen::VectorXd::Ones(n));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = lambda(i);
    if (!(lambda(i) > 0.0)) {
      std::ostringstream os;
      os << "weight lambda_" << (i + 1) << " = " << lambda(i) << " is not positive";
      throw Error(ErrorCode::kNonPositiveWeight, os.str());
    }
  }
  return out;
}

EfficientFrontier make_frontier(const ReducedGame& game, const ProfileSearchOptions& options) {
  EfficientFrontier f = preferred_profiles(game, options);
  f.lambda = hyperplane_weights(f);
  return f;
}

std::vector<double> barycentric(const EfficientFrontier& frontier, std::span<const double> v) {
  const Eigen::MatrixXd m = frontier_matrix(frontier);
  Eigen::VectorXd rhs(m.rows());
  for (Eigen::Index k = 0; k < m.rows(); ++k) rhs(k) = v[static_cast<std::size_t>(k)];
  const Eigen::VectorXd theta = m.transpose().fullPivLu().solve(rhs);
  return {theta.data(), theta.data() + theta.size()};
}

ValidationReport validate_assumptions(const ReducedGame& game, const ValidationOptions& options) {
  ValidationReport report;
  const std::size_t n = game.players();

  EfficientFrontier frontier;
  try {
    frontier = preferred_profiles(game, options.search);
  } catch (const Error& e) {
    report.failure = e.what();
    report.a1.witness = e.what();
    report.a2.witness = "preferred profiles undefined";
    report.a3.witness = "preferred profiles undefined";
    report.a4.witness = "preferred profiles undefined";
    return report;
  }

  // A1: linear independence.
  {
    const double det = frontier_determinant(frontier);
    double scale = 1.0;
    for (const auto& row : frontier.v_tilde) {
      double s = 0.0;
      for (double x : row) s += x * x;
      scale *= std::max(std::sqrt(s), 1e-300);
    }
    report.a1.value = det;
    report.a1.pass = std::abs(det) > tol::kDeterminant * scale;
    std::ostringstream os;
    os << "det = " << det;
    report.a1.witness = os.str();
  }

  // A2: positive weights and strict separation of every other profile.
  if (report.a1.pass) {
    try {
      frontier.lambda = hyperplane_weights(frontier);
    } catch (const Error& e) {
      report.a2.witness = e.what();
    }
  } else {
    report.a2.witness = "weights undefined (Assumption 1 fails)";
  }
  if (!frontier.lambda.empty()) {
    double worst = -kInf;
    JointAction worst_a;
    auto consider = [&](std::span<const double> a) {
      for (const auto& at : frontier.a_tilde) {
        if (near_profile(game, a, at)) return;
      }
      const double w = dot(frontier.lambda, game.payoffs(a));
      if (w > worst) {
        worst = w;
        worst_a.assign(a.begin(), a.end());
      }
    };
    for_each_joint(joint_grids(game, options.search.joint_budget),
                   [&](std::span<const double> a, std::span<const std::size_t>) { consider(a); });
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (double x : game.actions(j).grid()) consider(deviate(frontier.a_tilde[i], j, x));
      }
    }
    report.a2.value = worst;
    report.a2.pass = worst < 1.0 - tol::kHyperplane;
    std::ostringstream os;
    os << "max lambda.U = " << worst << " at " << (worst_a.empty() ? "-" : game.describe(worst_a));
    report.a2.witness = os.str();
  }

  // A3: full support.
  {
    double lo = kInf;
    double hi = -kInf;
    std::string lo_at;
    std::string hi_at;
    auto consider = [&](std::size_t label, std::span<const double> a) {
      const double p = game.bad_prob(label, a);
      if (p < lo) {
        lo = p;
        lo_at = "label " + one_based(label) + " at " + game.describe(a);
      }
      if (p > hi) {
        hi = p;
        hi_at = "label " + one_based(label) + " at " + game.describe(a);
      }
    };
    for (std::size_t i = 0; i < n; ++i) consider(i, frontier.a_tilde[i]);
    if (options.strict_support) {
      for_each_joint(joint_grids(game, options.search.joint_budget),
                     [&](std::span<const double> a, std::span<const std::size_t>) {
                       for (std::size_t label = 0; label < n; ++label) consider(label, a);
                     });
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (double x : game.actions(j).grid()) consider(i, deviate(frontier.a_tilde[i], j, x));
        }
      }
    }
    report.min_bad = lo;
    report.max_bad = hi;
    report.a3.pass = lo > 0.0 && hi < 1.0;
    report.a3.value = std::min(lo, 1.0 - hi);
    std::ostringstream os;
    os << "bad-signal range [" << lo << " (" << lo_at << "), " << hi << " (" << hi_at << ")]";
    report.a3.witness = os.str();
  }

  // A4: profitable deviations exist and all of them raise the bad signal.
  {
    bool exists_all = true;
    bool detect_all = true;
    double worst_gap = kInf;
    std::string witness = "all profitable deviations detected";
    for (std::size_t i = 0; i < n && exists_all; ++i) {
      const JointAction& at = frontier.a_tilde[i];
      const double base_bad = game.bad_prob(i, at);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double base_u = frontier.v_tilde[i][j];
        bool exists = false;
        for (double x : game.actions(j).grid()) {
          const JointAction d = deviate(at, j, x);
          const double gain = game.payoff(j, d) - base_u;
          if (!(gain > tol::kStrict)) continue;
          exists = true;
          const double gap = game.bad_prob(i, d) - base_bad;
          if (gap < worst_gap) {
            worst_gap = gap;
            if (!(gap > tol::kStrict)) {
              std::ostringstream os;
              os << "i=" << (i + 1) << ", j=" << (j + 1) << ", a_j=" << game.actions(j).describe(x)
                 << ": gain " << gain << " with bad-signal change " << gap;
              witness = os.str();
            }
          }
          if (!(gap > tol::kStrict)) detect_all = false;
        }
        if (!exists) {
          exists_all = false;
          witness = "i=" + one_based(i) + ", j=" + one_based(j) + ": no profitable deviation";
          break;
        }
      }
    }
    report.a4_existence = exists_all;
    report.a4_detectability = detect_all;
    report.a4.pass = exists_all && detect_all;
    report.a4.value = worst_gap;
    report.a4.witness = witness;
  }

  report.frontier = frontier;
  return report;
}

}  // namespace ppekit
