#include "ppekit/elaborated.hpp"

#include <cmath>

#include "ppekit/error.hpp"
#include "ppekit/frontier.hpp"

namespace ppekit {

namespace {

constexpr double kRowTol = 1e-9;

void check_stochastic(const Matrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.size() != rows) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has " + std::to_string(m.size()) + " rows, expected " + std::to_string(rows));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (m[r].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " row " + std::to_string(r + 1) +
                                                     " has wrong length");
    }
    double s = 0.0;
    for (double x : m[r]) {
      if (x < 0.0) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " has a negative entry");
      s += x;
    }
    if (std::abs(s - 1.0) > kRowTol) {
      throw Error(ErrorCode::kInvalidArgument, std::string(what) + " row " + std::to_string(r + 1) +
                                                   " does not sum to 1");
    }
  }
}

Matrix identity(std::size_t k) {
  Matrix m(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1.0;
  return m;
}

}  // namespace

MeasurementDevice identity_device(const std::vector<std::string>& outcomes) {
  return {outcomes, identity(outcomes.size())};
}

AnnouncementRule identity_rule(const std::vector<std::string>& measurements) {
  return {measurements, identity(measurements.size())};
}

SignalGame::SignalGame(std::string name, std::vector<ActionSpace> actions, std::vector<std::string> signals,
                       PayoffFn payoffs, SignalFn signal_dist)
    : name_(std::move(name)),
      actions_(std::move(actions)),
      signals_(std::move(signals)),
      payoffs_(std::move(payoffs)),
      signal_dist_(std::move(signal_dist)) {
  if (actions_.size() < 2) throw Error(ErrorCode::kInvalidArgument, "a game needs at least two players");
  if (signals_.empty()) throw Error(ErrorCode::kInvalidArgument, "signal set is empty");
}

std::size_t SignalGame::sample(std::span<const double> a, double u) const {
  const Distribution p = signal_dist(a);
  double acc = 0.0;
  for (std::size_t y = 0; y + 1 < p.size(); ++y) {
    acc += p[y];
    if (u < acc) return y;
  }
  return p.size() - 1;
}

SignalGame reduce(const OutcomeModel& model, const MeasurementDevice& device, const AnnouncementRule& rule,
                  std::string name) {
  const std::size_t nz = model.outcomes.size();
  const std::size_t nx = device.measurements.size();
  const std::size_t ny = rule.signals.size();
  if (!model.pi || !model.utility) throw Error(ErrorCode::kInvalidArgument, "outcome model is incomplete");
  check_stochastic(device.phi, nz, nx, "measurement device");
  check_stochastic(rule.psi, nx, ny, "announcement rule");

  // Compose psi after phi once: kernel[z][y].
  Matrix kernel(nz, std::vector<double>(ny, 0.0));
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t x = 0; x < nx; ++x) {
      if (device.phi[z][x] == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) kernel[z][y] += device.phi[z][x] * rule.psi[x][y];
    }
  }

  const std::size_t n = model.actions.size();
  auto pi = model.pi;
  auto utility = model.utility;
  PayoffFn payoffs = [pi, utility, n, nz](std::span<const double> a) {
    const Distribution p = pi(a);
    if (p.size() != nz) throw Error(ErrorCode::kDimensionMismatch, "outcome distribution has wrong length");
    Payoffs u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t z = 0; z < nz; ++z) {
        if (p[z] != 0.0) u[i] += utility(i, a[i], z) * p[z];
      }
    }
    return u;
  };
  SignalGame::SignalFn signal = [pi, kernel, nz, ny](std::span<const double> a) {
    const Distribution p = pi(a);
    if (p.size() != nz) throw Error(ErrorCode::kDimensionMismatch, "outcome distribution has wrong length");
    Distribution r(ny, 0.0);
    for (std::size_t z = 0; z < nz; ++z) {
      if (p[z] == 0.0) continue;
      for (std::size_t y = 0; y < ny; ++y) r[y] += kernel[z][y] * p[z];
    }
    return r;
  };
  return SignalGame(std::move(name), model.actions, rule.signals, std::move(payoffs), std::move(signal));
}

ReducedGame coarsen(const SignalGame& game, const std::vector<int>& cell, const std::vector<int>& bad_cell,
                    std::size_t joint_budget) {
  const std::size_t ny = game.signals().size();
  const std::size_t n = game.players();
  if (cell.size() != ny) throw Error(ErrorCode::kDimensionMismatch, "partition must assign every signal");
  if (bad_cell.size() != 1 && bad_cell.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "bad-cell labels must be given once or per player");
  }
  std::size_t members[2] = {0, 0};
  for (int c : cell) {
    if (c != 0 && c != 1) throw Error(ErrorCode::kInvalidArgument, "partition cells are 0 or 1");
    ++members[c];
  }
  for (int c : bad_cell) {
    if (c != 0 && c != 1) throw Error(ErrorCode::kInvalidArgument, "bad cell must be 0 or 1");
  }
  for (int c = 0; c < 2; ++c) {
    if (members[c] == 0) throw Error(ErrorCode::kDegenerateCell, "cell " + std::to_string(c) + " is empty");
  }

  auto cell_prob = [game, cell](std::span<const double> a) {
    const Distribution p = game.signal_dist(a);
    double one = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (cell[y] == 1) one += p[y];
    }
    return one;
  };

  // A cell that never carries information cannot serve as a signal.
  std::vector<std::vector<double>> grids;
  {
    double per = std::pow(static_cast<double>(joint_budget), 1.0 / static_cast<double>(n));
    for (const auto& s : game.action_spaces()) {
      grids.push_back(s.is_finite() ? s.grid() : s.grid(std::max(2, std::min(s.resolution(), static_cast<int>(per)))));
    }
  }
  bool always_zero = true;
  bool always_one = true;
  for_each_joint(grids, [&](std::span<const double> a, std::span<const std::size_t>) {
    const double one = cell_prob(a);
    if (one > 0.0) always_zero = false;
    if (one < 1.0) always_one = false;
  });
  if (always_zero || always_one) {
    throw Error(ErrorCode::kDegenerateCell, "a cell has probability identically 0 or 1");
  }

  std::vector<int> labels = bad_cell;
  if (labels.size() == 1) labels.assign(n, bad_cell[0]);
  BadSignalFn bad = [cell_prob, labels](std::size_t label, std::span<const double> a) {
    const double one = cell_prob(a);
    return labels.at(label) == 1 ? one : 1.0 - one;
  };
  auto payoffs = [game](std::span<const double> a) { return game.payoffs(a); };
  return ReducedGame(game.name(), game.action_spaces(), std::move(payoffs), std::move(bad));
}

}  // namespace ppekit
