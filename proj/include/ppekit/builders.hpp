#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ppekit/elaborated.hpp"
#include "ppekit/game.hpp"

namespace ppekit {

struct PdParams {
  double B = 4.0;
  double b = 1.0;
  double c = 1.5;
  double p = 0.9;
  double q = 0.8;
  double r = 0.2;
};

// Prisoners' dilemma with (C,C) -> (c,c), (C,D) -> (0,B), (D,C) -> (B,0),
// (D,D) -> (b,b). Action 0 is C, 1 is D. y_g is good for both players.
// `check` enforces B > 2c > 2b > 0 and 1 > p >= q > r > 0.
ReducedGame make_modified_pd(const PdParams& params, bool check = true);

// Same game as an elaborated form with Z = A x Y and an identity device.
OutcomeModel pd_outcome_model(const PdParams& params);

struct ContestParams {
  std::size_t n = 2;
  double R = 1.0;
  double eta = 0.9;
  double kappa = 0.6;
  double c = 0.2;
  int resolution = 1001;
};

// Outcomes z_0 (no winner), z_1..z_n (winner); efforts in [0, 1].
OutcomeModel contest_outcome_model(const ContestParams& params);

// Rule 1 announces whether anyone won (binary, through reduce + coarsen);
// rule 2 announces the winner (n + 1 signals).
ReducedGame make_contest(const ContestParams& params, bool check = true);
SignalGame make_contest_rule2(const ContestParams& params, bool check = true);

// Closed-form probability that i wins.
double contest_win_prob(const ContestParams& params, std::span<const double> a, std::size_t i);

struct Mm1Params {
  std::size_t n = 3;
  double chi = 1.0;
  double eps = 0.3;  // shocks uniform on [0, eps]
  double p = 1.0;
  double d0 = 2.0;
  int resolution = 1001;
};

// Users share a server of capacity chi - shock; y_l ("delay below d0") is good.
ReducedGame make_mm1(const Mm1Params& params, bool check = true);

// Ex-ante utility and good-signal probability, exposed for tests.
double mm1_utility(const Mm1Params& params, std::span<const double> a, std::size_t i);
double mm1_good_prob(const Mm1Params& params, std::span<const double> a);

// Three players with actions {l, m, h}; unlisted payoffs are 0.
ReducedGame make_table3();

// Finite game from explicit tables. Profiles are enumerated with player 1's
// action varying fastest. payoffs[k] has n entries; bad[k][i] is the bad-signal
// probability when i is active.
ReducedGame make_custom_matrix(std::string name, std::vector<std::vector<std::string>> labels,
                               std::vector<std::vector<double>> payoffs, std::vector<std::vector<double>> bad);

// Index of a finite joint action in the custom table enumeration.
std::size_t profile_index(const std::vector<ActionSpace>& spaces, std::span<const double> a);

}  // namespace ppekit
