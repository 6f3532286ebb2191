#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ppekit/game.hpp"

namespace ppekit {

using Distribution = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

// Outcome model: pi(a) is a distribution over a finite outcome set Z and
// utility(i, a_i, z) is i's realized utility.
struct OutcomeModel {
  std::vector<ActionSpace> actions;
  std::vector<std::string> outcomes;
  std::function<Distribution(std::span<const double>)> pi;
  std::function<double(std::size_t, double, std::size_t)> utility;
};

// phi[z][x]: probability of measurement x given outcome z.
struct MeasurementDevice {
  std::vector<std::string> measurements;
  Matrix phi;
};

// psi[x][y]: probability of announcing y given measurement x.
struct AnnouncementRule {
  std::vector<std::string> signals;
  Matrix psi;
};

MeasurementDevice identity_device(const std::vector<std::string>& outcomes);
AnnouncementRule identity_rule(const std::vector<std::string>& measurements);

// Reduced game with an arbitrary finite public signal set.
class SignalGame {
 public:
  using SignalFn = std::function<Distribution(std::span<const double>)>;

  SignalGame(std::string name, std::vector<ActionSpace> actions, std::vector<std::string> signals,
             PayoffFn payoffs, SignalFn signal_dist);

  const std::string& name() const noexcept { return name_; }
  std::size_t players() const noexcept { return actions_.size(); }
  const std::vector<ActionSpace>& action_spaces() const noexcept { return actions_; }
  const std::vector<std::string>& signals() const noexcept { return signals_; }

  Payoffs payoffs(std::span<const double> a) const { return payoffs_(a); }
  Distribution signal_dist(std::span<const double> a) const { return signal_dist_(a); }

  // Index of the signal drawn with uniform variate u in [0, 1).
  std::size_t sample(std::span<const double> a, double u) const;

 private:
  std::string name_;
  std::vector<ActionSpace> actions_;
  std::vector<std::string> signals_;
  PayoffFn payoffs_;
  SignalFn signal_dist_;
};

// U_i(a) = sum_z u_i(a_i, z) pi(z|a); rho(y|a) = sum_x sum_z psi(y|x) phi(x|z) pi(z|a).
SignalGame reduce(const OutcomeModel& model, const MeasurementDevice& device, const AnnouncementRule& rule,
                  std::string name);

// Two-cell coarsening. `cell[y]` is 0 or 1 for every signal y; `bad_cell[i]`
// names the cell that is the bad signal when i is active (a single entry
// applies to every label). Throws DegenerateCell when a cell is empty or its
// probability is identically 0 or 1 over the joint action grid.
ReducedGame coarsen(const SignalGame& game, const std::vector<int>& cell, const std::vector<int>& bad_cell,
                    std::size_t joint_budget = std::size_t{1} << 16);

}  // namespace ppekit
