#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ppekit/action_space.hpp"

namespace ppekit {

using JointAction = std::vector<double>;
using Payoffs = std::vector<double>;

// Expected stage utilities U(a) for every player.
using PayoffFn = std::function<Payoffs(std::span<const double>)>;

// Probability of the bad signal y_b^label given joint action a, where `label`
// is the index of the active player whose good/bad labeling applies.
using BadSignalFn = std::function<double(std::size_t, std::span<const double>)>;

// Reduced-form stage game with two public signals. Immutable once built;
// copies share the underlying callables.
class ReducedGame {
 public:
  ReducedGame(std::string name, std::vector<ActionSpace> actions, PayoffFn payoffs,
              BadSignalFn bad_signal);

  const std::string& name() const noexcept { return name_; }
  std::size_t players() const noexcept { return actions_.size(); }
  const ActionSpace& actions(std::size_t i) const { return actions_.at(i); }
  const std::vector<ActionSpace>& action_spaces() const noexcept { return actions_; }

  Payoffs payoffs(std::span<const double> a) const;
  double payoff(std::size_t i, std::span<const double> a) const;
  double bad_prob(std::size_t label, std::span<const double> a) const;
  double good_prob(std::size_t label, std::span<const double> a) const {
    return 1.0 - bad_prob(label, a);
  }

  bool all_finite() const noexcept;

  // Same game with every interval action grid set to `resolution` points.
  ReducedGame with_resolution(int resolution) const;

  std::string describe(std::span<const double> a) const;

 private:
  std::string name_;
  std::vector<ActionSpace> actions_;
  PayoffFn payoffs_;
  BadSignalFn bad_signal_;
};

// a with player j's action replaced by aj.
JointAction deviate(std::span<const double> a, std::size_t j, double aj);

}  // namespace ppekit
