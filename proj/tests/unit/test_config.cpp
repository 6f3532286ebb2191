#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "ppekit/config.hpp"
#include "ppekit/error.hpp"

using namespace ppekit;
using doctest::Approx;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "t.ini");
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) return e.what();
    return "wrong code";
  }
  return "no error";
}

}  // namespace

TEST_CASE("PD config") {
  const RunConfig c = parse("[game]\nbuilder = modified_pd\nq = 0.7  # comment\n[analysis]\ndelta = 0.9\nmu = 1.5 1.5\n");
  CHECK(c.builder == "modified_pd");
  CHECK(c.pd.q == 0.7);
  CHECK(c.pd.B == 4.0);
  CHECK(c.delta == 0.9);
  REQUIRE(c.mu);
  CHECK(c.mu->size() == 2);
}

TEST_CASE("errors carry line numbers") {
  CHECK(parse_error("[game]\nbuilder = modified_pd\nbogus = 1\n") == "ParseError: t.ini:3: unknown key 'bogus' in [game]");
  CHECK(parse_error("[game]\nbuilder = modified_pd\nq = x\n") == "ParseError: t.ini:3: expected a number, got 'x'");
  CHECK(parse_error("[game]\nbuilder = nope\n") == "ParseError: t.ini:2: unknown builder 'nope'");
  CHECK(parse_error("[game\n") == "ParseError: t.ini:1: unterminated section header");
  CHECK(parse_error("[game]\nbuilder = table3\n[extra]\nx = 1\n") == "ParseError: t.ini:4: unknown section [extra]");
  CHECK(parse_error("[game]\nbuilder = table3\n[analysis]\ndelta = 1.5\n") ==
        "ParseError: t.ini:4: delta must lie in (0, 1)");
  CHECK(parse_error("[game]\nbuilder = table3\nbuilder = table3\n") == "ParseError: t.ini:3: duplicate key 'builder'");
}

TEST_CASE("custom matrix config") {
  const RunConfig c = load_config(config_path("custom_pd.ini"));
  CHECK(c.labels.size() == 2);
  const ReducedGame g = build_game(c);
  const ReducedGame ref = make_modified_pd(kPd);
  for (double a1 : {0.0, 1.0}) {
    for (double a2 : {0.0, 1.0}) {
      const JointAction a{a1, a2};
      CHECK(g.payoffs(a) == ref.payoffs(a));
      CHECK(g.bad_prob(0, a) == Approx(ref.bad_prob(0, a)));
    }
  }
  CHECK(parse_error("[game]\nbuilder = custom_matrix\nactions = C D | C D\npayoff.C.C = 1 1\n").find("missing") !=
        std::string::npos);
  CHECK(parse_error("[game]\nbuilder = custom_matrix\nactions = C D | C D\npayoff.C.X = 1 1\n") ==
        "ParseError: t.ini:4: unknown action 'X' for player 2");
}

TEST_CASE("deviation policies") {
  const ReducedGame g = make_modified_pd(kPd);
  const auto p = parse_policies("stationary:2:D; myopic:1 ;oneshot:2:C", g);
  REQUIRE(p.size() == 3);
  CHECK(p[0].kind == PolicyKind::kStationary);
  CHECK(p[0].deviator == 1);
  CHECK(p[0].action == 1.0);
  CHECK(p[1].kind == PolicyKind::kMyopic);
  CHECK(p[2].describe(g) == "oneshot:2:C");
  CHECK_THROWS_AS(parse_policies("stationary:3:D", g), Error);
  CHECK_THROWS_AS(parse_policies("lazy:1", g), Error);
}

TEST_CASE("sweep parameters") {
  const RunConfig c = parse("[game]\nbuilder = modified_pd\n[sweep]\nparameter = d0\nfrom = 1\nto = 2\nsteps = 3\n");
  try {
    game_factory(c, "d0");
    FAIL("expected UnknownSweepParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownSweepParameter);
  }
  const RunConfig m = load_config(config_path("mm1_d0_sweep.ini"));
  CHECK(game_factory(m, "d0")(3.0).players() == 3);
}

TEST_CASE("mm1_sharing is accepted as the builder name") {
  const RunConfig c = parse("[game]\nbuilder = mm1_sharing\np = 2\nd0 = 4\n");
  CHECK(c.builder == "mm1");
  CHECK(build_game(c).name() == "mm1_sharing");
}
