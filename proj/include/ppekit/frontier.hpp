#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppekit/game.hpp"

namespace ppekit {

namespace tol {
// Gap the best joint action must keep over every separated competitor.
inline constexpr double kArgmaxGap = 1e-9;
// lambda . U(a) must stay below 1 - kHyperplane off the preferred profiles.
inline constexpr double kHyperplane = 1e-12;
// "Profitable" and signal comparisons are strict beyond this margin.
inline constexpr double kStrict = 1e-12;
// Assumption 1: |det| relative to the product of row norms.
inline constexpr double kDeterminant = 1e-12;
}  // namespace tol

struct EfficientFrontier {
  std::vector<JointAction> a_tilde;  // preferred profile of each player
  std::vector<Payoffs> v_tilde;      // v_tilde[i] = U(a_tilde[i])
  std::vector<double> lambda;        // hyperplane weights; empty until computed

  std::size_t players() const noexcept { return a_tilde.size(); }
  double best_payoff(std::size_t i) const { return v_tilde.at(i).at(i); }
};

struct ProfileSearchOptions {
  // Upper bound on joint grid points evaluated by the coarse joint scan.
  std::size_t joint_budget = std::size_t{1} << 21;
};

// Unique maximizer of each U_i over the joint action space. Throws
// NonUniqueArgmax when a separated joint action ties within tol::kArgmaxGap.
EfficientFrontier preferred_profiles(const ReducedGame& game, const ProfileSearchOptions& options = {});

// Solves lambda . v_tilde^i = 1 for all i. Throws SingularFrontier or
// NonPositiveWeight.
std::vector<double> hyperplane_weights(const EfficientFrontier& frontier);

// preferred_profiles followed by hyperplane_weights.
EfficientFrontier make_frontier(const ReducedGame& game, const ProfileSearchOptions& options = {});

// Determinant of the matrix whose rows are the v_tilde^i.
double frontier_determinant(const EfficientFrontier& frontier);

// Coordinates theta with sum_k theta_k v_tilde^k = v.
std::vector<double> barycentric(const EfficientFrontier& frontier, std::span<const double> v);

double dot(std::span<const double> x, std::span<const double> y);

struct AssumptionCheck {
  bool pass = false;
  double value = 0.0;   // determinant, worst lambda.U, support extreme, or worst signal gap
  std::string witness;  // human-readable location of the binding case
};

struct ValidationReport {
  AssumptionCheck a1;
  AssumptionCheck a2;
  AssumptionCheck a3;
  AssumptionCheck a4;
  bool a4_existence = false;      // every (i, j) has a profitable deviation
  bool a4_detectability = false;  // every profitable deviation raises the bad signal
  double min_bad = 0.0;           // A3 support range over the checked profiles
  double max_bad = 0.0;
  std::optional<EfficientFrontier> frontier;
  std::string failure;  // set when the frontier itself could not be built

  bool all_pass() const noexcept { return a1.pass && a2.pass && a3.pass && a4.pass; }
};

struct ValidationOptions {
  // When false, full support is checked on the preferred profiles (the only
  // profiles played on path); when true on every joint grid profile and every
  // single deviation.
  bool strict_support = false;
  ProfileSearchOptions search;
};

ValidationReport validate_assumptions(const ReducedGame& game, const ValidationOptions& options = {});

// Visits every point of the product grid. The callback receives the joint
// action and the per-player grid indices.
void for_each_joint(const std::vector<std::vector<double>>& grids,
                    const std::function<void(std::span<const double>, std::span<const std::size_t>)>& fn);

// Per-player grids for a joint scan whose size stays within `budget`.
std::vector<std::vector<double>> joint_grids(const ReducedGame& game, std::size_t budget);

}  // namespace ppekit
