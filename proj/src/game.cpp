#include "ppekit/game.hpp"

#include <sstream>

#include "ppekit/error.hpp"

namespace ppekit {

ReducedGame::ReducedGame(std::string name, std::vector<ActionSpace> actions, PayoffFn payoffs,
                         BadSignalFn bad_signal)
    : name_(std::move(name)),
      actions_(std::move(actions)),
      payoffs_(std::move(payoffs)),
      bad_signal_(std::move(bad_signal)) {
  if (actions_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a game needs at least two players");
  }
  if (!payoffs_ || !bad_signal_) {
    throw Error(ErrorCode::kInvalidArgument, "payoff and signal functions are required");
  }
}

Payoffs ReducedGame::payoffs(std::span<const double> a) const {
  if (a.size() != actions_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "joint action has wrong arity");
  }
  return payoffs_(a);
}

double ReducedGame::payoff(std::size_t i, std::span<const double> a) const {
  return payoffs(a).at(i);
}

double ReducedGame::bad_prob(std::size_t label, std::span<const double> a) const {
  if (a.size() != actions_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "joint action has wrong arity");
  }
  return bad_signal_(label, a);
}

bool ReducedGame::all_finite() const noexcept {
  for (const auto& s : actions_) {
    if (!s.is_finite()) return false;
  }
  return true;
}

ReducedGame ReducedGame::with_resolution(int resolution) const {
  std::vector<ActionSpace> spaces;
  spaces.reserve(actions_.size());
  for (const auto& s : actions_) spaces.push_back(s.with_resolution(resolution));
  return ReducedGame(name_, std::move(spaces), payoffs_, bad_signal_);
}

std::string ReducedGame::describe(std::span<const double> a) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) os << ',';
    os << actions_.at(k).describe(a[k]);
  }
  os << ')';
  return os.str();
}

JointAction deviate(std::span<const double> a, std::size_t j, double aj) {
  JointAction out(a.begin(), a.end());
  out.at(j) = aj;
  return out;
}

}  // namespace ppekit
