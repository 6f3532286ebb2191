#include "ppekit/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ppekit/error.hpp"

namespace ppekit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

class Reader {
 public:
  explicit Reader(const IniFile& ini) : ini_(ini) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw Error(ErrorCode::kParseError, ini_.path + ":" + std::to_string(line) + ": " + msg);
  }

  const IniEntry* find(const std::string& section, const std::string& key) const {
    auto s = ini_.sections.find(section);
    if (s == ini_.sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  double number(const IniEntry& e) const {
    double x = 0.0;
    const std::string v = e.value;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail(e.line, "expected a number, got '" + v + "'");
    return x;
  }

  std::vector<double> numbers(const IniEntry& e) const {
    std::vector<double> out;
    for (const auto& w : words(e.value)) out.push_back(number(IniEntry{w, e.line}));
    if (out.empty()) fail(e.line, "expected a list of numbers");
    return out;
  }

  std::uint64_t count(const IniEntry& e, std::uint64_t lo = 0) const {
    std::uint64_t x = 0;
    const std::string v = e.value;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail(e.line, "expected a nonnegative integer, got '" + v + "'");
    if (x < lo) fail(e.line, "value must be at least " + std::to_string(lo));
    return x;
  }

  bool flag(const IniEntry& e) const {
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    fail(e.line, "expected true or false, got '" + e.value + "'");
  }

  void set(const std::string& section, const std::string& key, double& out) const {
    if (const IniEntry* e = find(section, key)) out = number(*e);
  }

 private:
  const IniFile& ini_;
};

void check_keys(const IniFile& ini, const Reader& r, const std::string& section, const std::set<std::string>& allowed,
                const std::function<bool(const std::string&)>& pattern = {}) {
  auto s = ini.sections.find(section);
  if (s == ini.sections.end()) return;
  for (const auto& [key, e] : s->second) {
    if (allowed.count(key) || (pattern && pattern(key))) continue;
    r.fail(e.line, "unknown key '" + key + "' in [" + section + "]");
  }
}

// Player p's labels, profile given as dotted labels, to the table index.
std::size_t custom_index(const RunConfig& c, const std::string& dotted, const Reader& r, int line) {
  const auto parts = split(dotted, '.');
  if (parts.size() != c.labels.size()) r.fail(line, "profile '" + dotted + "' needs one label per player");
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& ls = c.labels[p];
    auto it = std::find(ls.begin(), ls.end(), parts[p]);
    if (it == ls.end()) r.fail(line, "unknown action '" + parts[p] + "' for player " + std::to_string(p + 1));
    idx += stride * static_cast<std::size_t>(it - ls.begin());
    stride *= ls.size();
  }
  return idx;
}

void read_custom(const IniFile& ini, const Reader& r, RunConfig& c, int builder_line) {
  const IniEntry* actions = r.find("game", "actions");
  if (!actions) r.fail(builder_line, "custom_matrix needs 'actions'");
  for (const auto& part : split(actions->value, '|')) {
    auto ls = words(part);
    if (ls.empty()) r.fail(actions->line, "every player needs at least one action");
    c.labels.push_back(std::move(ls));
  }
  const std::size_t n = c.labels.size();
  std::size_t total = 1;
  for (const auto& ls : c.labels) total *= ls.size();
  c.payoffs.assign(total, {});
  c.bad.assign(total, {});
  for (const auto& [key, e] : ini.sections.at("game")) {
    const bool is_payoff = key.rfind("payoff.", 0) == 0;
    const bool is_bad = key.rfind("bad.", 0) == 0;
    if (!is_payoff && !is_bad) continue;
    const std::size_t k = custom_index(c, key.substr(is_payoff ? 7 : 4), r, e.line);
    std::vector<double> xs = r.numbers(e);
    if (is_payoff) {
      if (xs.size() != n) r.fail(e.line, "payoff row needs " + std::to_string(n) + " entries");
      c.payoffs[k] = xs;
    } else {
      if (xs.size() == 1) xs.assign(n, xs[0]);
      if (xs.size() != n) r.fail(e.line, "bad-signal row needs 1 or " + std::to_string(n) + " entries");
      for (double x : xs) {
        if (x < 0.0 || x > 1.0) r.fail(e.line, "bad-signal probability outside [0, 1]");
      }
      c.bad[k] = xs;
    }
  }
  for (std::size_t k = 0; k < total; ++k) {
    if (c.payoffs[k].empty() || c.bad[k].empty()) {
      r.fail(actions->line, "custom_matrix is missing a payoff or bad row for profile " + std::to_string(k + 1));
    }
  }
}

}  // namespace

IniFile parse_ini(std::istream& in, const std::string& path) {
  IniFile ini;
  ini.path = path;
  std::string section;
  std::string raw;
  int line = 0;
  const auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kParseError, path + ":" + std::to_string(line) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail("unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) fail("empty section name");
      ini.sections[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    if (section.empty()) fail("key outside any section");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (ini.sections[section].count(key)) fail("duplicate key '" + key + "'");
    ini.sections[section][key] = IniEntry{value, line};
  }
  return ini;
}

RunConfig parse_config(std::istream& in, const std::string& path) {
  const IniFile ini = parse_ini(in, path);
  const Reader r(ini);
  for (const auto& [name, body] : ini.sections) {
    static const std::set<std::string> known{"game", "analysis", "simulation", "sweep", "run", "oracle"};
    if (!known.count(name)) {
      const int line = body.empty() ? 1 : body.begin()->second.line;
      r.fail(line, "unknown section [" + name + "]");
    }
  }

  RunConfig c;
  c.path = path;
  const IniEntry* builder = r.find("game", "builder");
  if (!builder) r.fail(1, "missing [game] builder");
  c.builder = builder->value;
  if (c.builder == "mm1_sharing") c.builder = "mm1";
  if (const IniEntry* e = r.find("game", "name")) c.name = e->value;

  if (c.builder == "modified_pd") {
    check_keys(ini, r, "game", {"builder", "name", "B", "b", "c", "p", "q", "r"});
    r.set("game", "B", c.pd.B);
    r.set("game", "b", c.pd.b);
    r.set("game", "c", c.pd.c);
    r.set("game", "p", c.pd.p);
    r.set("game", "q", c.pd.q);
    r.set("game", "r", c.pd.r);
  } else if (c.builder == "contest") {
    check_keys(ini, r, "game", {"builder", "name", "n", "R", "eta", "kappa", "c", "resolution"});
    if (const IniEntry* e = r.find("game", "n")) c.contest.n = r.count(*e, 2);
    r.set("game", "R", c.contest.R);
    r.set("game", "eta", c.contest.eta);
    r.set("game", "kappa", c.contest.kappa);
    r.set("game", "c", c.contest.c);
    if (const IniEntry* e = r.find("game", "resolution")) c.contest.resolution = static_cast<int>(r.count(*e, 2));
  } else if (c.builder == "mm1") {
    check_keys(ini, r, "game", {"builder", "name", "n", "chi", "eps", "p", "d0", "resolution"});
    if (const IniEntry* e = r.find("game", "n")) c.mm1.n = r.count(*e, 2);
    r.set("game", "chi", c.mm1.chi);
    r.set("game", "eps", c.mm1.eps);
    r.set("game", "p", c.mm1.p);
    r.set("game", "d0", c.mm1.d0);
    if (const IniEntry* e = r.find("game", "resolution")) c.mm1.resolution = static_cast<int>(r.count(*e, 2));
  } else if (c.builder == "table3") {
    check_keys(ini, r, "game", {"builder", "name"});
  } else if (c.builder == "custom_matrix") {
    check_keys(ini, r, "game", {"builder", "name", "actions"}, [](const std::string& k) {
      return k.rfind("payoff.", 0) == 0 || k.rfind("bad.", 0) == 0;
    });
    read_custom(ini, r, c, builder->line);
  } else {
    r.fail(builder->line, "unknown builder '" + c.builder + "'");
  }

  check_keys(ini, r, "analysis", {"mu", "delta", "v0", "strict_support", "relax_incentive", "joint_budget"});
  if (const IniEntry* e = r.find("analysis", "mu")) c.mu = r.numbers(*e);
  if (const IniEntry* e = r.find("analysis", "v0")) c.v0 = r.numbers(*e);
  if (const IniEntry* e = r.find("analysis", "delta")) {
    c.delta = r.number(*e);
    if (!(c.delta > 0.0 && c.delta < 1.0)) r.fail(e->line, "delta must lie in (0, 1)");
  }
  if (const IniEntry* e = r.find("analysis", "strict_support")) c.strict_support = r.flag(*e);
  if (const IniEntry* e = r.find("analysis", "relax_incentive")) c.relax_incentive = r.flag(*e);
  if (const IniEntry* e = r.find("analysis", "joint_budget")) c.search.joint_budget = r.count(*e, 1);

  check_keys(ini, r, "simulation", {"episodes", "horizon", "seed", "eps_trunc", "deviations", "threads"});
  if (const IniEntry* e = r.find("simulation", "episodes")) c.sim.episodes = r.count(*e, 2);
  if (const IniEntry* e = r.find("simulation", "horizon")) c.sim.horizon = r.count(*e, 1);
  if (const IniEntry* e = r.find("simulation", "seed")) c.sim.seed = r.count(*e);
  if (const IniEntry* e = r.find("simulation", "threads")) c.sim.threads = static_cast<unsigned>(r.count(*e));
  if (const IniEntry* e = r.find("simulation", "eps_trunc")) {
    c.sim.eps_trunc = r.number(*e);
    if (!(c.sim.eps_trunc > 0.0)) r.fail(e->line, "eps_trunc must be positive");
  }
  if (const IniEntry* e = r.find("simulation", "deviations")) c.deviations = e->value;

  check_keys(ini, r, "sweep", {"parameter", "from", "to", "steps"});
  if (ini.sections.count("sweep")) {
    const IniEntry* p = r.find("sweep", "parameter");
    const IniEntry* from = r.find("sweep", "from");
    const IniEntry* to = r.find("sweep", "to");
    const IniEntry* steps = r.find("sweep", "steps");
    const int line = p ? p->line : 1;
    if (!p || !from || !to || !steps) r.fail(line, "[sweep] needs parameter, from, to and steps");
    c.sweep_parameter = p->value;
    c.sweep_from = r.number(*from);
    c.sweep_to = r.number(*to);
    c.sweep_steps = r.count(*steps, 1);
  }

  check_keys(ini, r, "run", {"periods", "signals", "seed"});
  if (const IniEntry* e = r.find("run", "periods")) c.periods = r.count(*e, 1);
  if (const IniEntry* e = r.find("run", "seed")) c.run_seed = r.count(*e);
  if (const IniEntry* e = r.find("run", "signals")) {
    c.signals = e->value;
    if (c.signals != "sampled" && c.signals.find_first_not_of("gb") != std::string::npos) {
      r.fail(e->line, "signals must be 'sampled' or a string of g and b");
    }
  }

  check_keys(ini, r, "oracle", {"grid"});
  if (const IniEntry* e = r.find("oracle", "grid")) c.grid = static_cast<int>(r.count(*e, 2));
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, path + ":0: cannot open file");
  return parse_config(in, path);
}

ReducedGame build_game(const RunConfig& c, bool check) {
  if (c.builder == "modified_pd") return make_modified_pd(c.pd, check);
  if (c.builder == "contest") return make_contest(c.contest, check);
  if (c.builder == "mm1") return make_mm1(c.mm1, check);
  if (c.builder == "table3") return make_table3();
  if (c.builder == "custom_matrix") {
    return make_custom_matrix(c.name.empty() ? "custom" : c.name, c.labels, c.payoffs, c.bad);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown builder '" + c.builder + "'");
}

std::function<ReducedGame(double)> game_factory(const RunConfig& c, const std::string& parameter) {
  if (parameter == "d0" && c.builder == "mm1") {
    return [p = c.mm1](double x) {
      Mm1Params q = p;
      q.d0 = x;
      return make_mm1(q);
    };
  }
  if (parameter == "kappa" && c.builder == "contest") {
    return [p = c.contest](double x) {
      ContestParams q = p;
      q.kappa = x;
      return make_contest(q);
    };
  }
  throw Error(ErrorCode::kUnknownSweepParameter,
              "cannot sweep '" + parameter + "' for builder '" + c.builder + "' (d0: mm1, kappa: contest, delta, eta)");
}

std::vector<DeviationPolicy> parse_policies(const std::string& text, const ReducedGame& game) {
  std::vector<DeviationPolicy> out;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    const auto bad = [&](const std::string& why) {
      throw Error(ErrorCode::kInvalidArgument, "deviation policy '" + item + "': " + why);
    };
    if (parts.size() < 2) bad("expected kind:player[:action]");
    DeviationPolicy p;
    std::size_t player = 0;
    auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), player);
    if (ec != std::errc() || ptr != parts[1].data() + parts[1].size() || player < 1 || player > game.players()) {
      bad("player must be between 1 and " + std::to_string(game.players()));
    }
    p.deviator = player - 1;
    const std::string& kind = parts[0];
    if (kind == "stationary" || kind == "oneshot") {
      if (parts.size() != 3) bad("needs an action");
      p.kind = kind == "stationary" ? PolicyKind::kStationary : PolicyKind::kOneShot;
      p.action = game.actions(p.deviator).parse(parts[2]);
    } else if (kind == "myopic" || kind == "compliance") {
      if (parts.size() != 2) bad("takes no action");
      p.kind = kind == "myopic" ? PolicyKind::kMyopic : PolicyKind::kCompliance;
    } else {
      bad("unknown kind '" + kind + "'");
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace ppekit
