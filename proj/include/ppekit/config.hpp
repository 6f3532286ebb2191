#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppekit/builders.hpp"
#include "ppekit/frontier.hpp"
#include "ppekit/game.hpp"
#include "ppekit/simulation.hpp"

namespace ppekit {

struct IniEntry {
  std::string value;
  int line = 0;
};

struct IniFile {
  std::string path;
  std::map<std::string, std::map<std::string, IniEntry>> sections;
};

// key = value lines under [section] headers; '#' starts a comment.
// Throws ParseError "path:line: message".
IniFile parse_ini(std::istream& in, const std::string& path);

struct RunConfig {
  std::string path;

  // [game]
  std::string builder;
  std::string name;
  PdParams pd;
  ContestParams contest;
  Mm1Params mm1;
  std::vector<std::vector<std::string>> labels;  // custom_matrix
  std::vector<std::vector<double>> payoffs;
  std::vector<std::vector<double>> bad;

  // [analysis]
  std::optional<std::vector<double>> mu;
  double delta = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::vector<double>> v0;
  bool strict_support = false;
  bool relax_incentive = false;
  ProfileSearchOptions search;

  // [simulation]
  SimOptions sim;
  std::string deviations;  // "stationary:2:D; myopic:2; oneshot:2:D"

  // [sweep]
  std::string sweep_parameter;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  std::size_t sweep_steps = 0;

  // [run]
  std::size_t periods = 1000;
  std::string signals = "sampled";  // or a string of g/b
  std::uint64_t run_seed = 1;

  // [oracle]
  int grid = 101;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& path);

ReducedGame build_game(const RunConfig& config, bool check = true);

// Game builder as a function of a swept game parameter (d0 for mm1, kappa for
// the contest). Throws UnknownSweepParameter otherwise.
std::function<ReducedGame(double)> game_factory(const RunConfig& config, const std::string& parameter);

// "kind:player[:action]" items separated by ';'. Players are 1-based.
std::vector<DeviationPolicy> parse_policies(const std::string& text, const ReducedGame& game);

}  // namespace ppekit
