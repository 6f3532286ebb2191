#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ppekit/builders.hpp"
#include "ppekit/error.hpp"
#include "ppekit/frontier.hpp"

using namespace ppekit;
using doctest::Approx;

TEST_CASE("action spaces") {
  const ActionSpace f = ActionSpace::finite({"C", "D"});
  CHECK(f.size() == 2);
  CHECK(f.describe(1.0) == "D");
  CHECK(f.parse("C") == 0.0);
  CHECK_THROWS_AS(f.parse("X"), Error);

  const ActionSpace iv = ActionSpace::interval(0.0, 1.0, 11);
  CHECK(iv.grid().size() == 11);
  CHECK(iv.grid().back() == 1.0);
  CHECK(iv.parse("0.25") == 0.25);
  CHECK_THROWS_AS(iv.parse("1.5"), Error);
}

TEST_CASE("deviate replaces one coordinate") {
  const JointAction a{0.0, 1.0, 2.0};
  CHECK(deviate(a, 1, 5.0) == JointAction{0.0, 5.0, 2.0});
}

TEST_CASE("PD payoffs and signals") {
  const ReducedGame g = make_modified_pd(kPd);
  const JointAction cc{0, 0}, cd{0, 1}, dc{1, 0}, dd{1, 1};
  CHECK(g.payoffs(cc) == Payoffs{1.5, 1.5});
  CHECK(g.payoffs(cd) == Payoffs{0.0, 4.0});
  CHECK(g.payoffs(dc) == Payoffs{4.0, 0.0});
  CHECK(g.payoffs(dd) == Payoffs{1.0, 1.0});
  CHECK(g.bad_prob(0, cc) == Approx(0.1));
  CHECK(g.bad_prob(0, dc) == Approx(0.2));
  CHECK(g.bad_prob(1, dd) == Approx(0.8));
}

TEST_CASE("PD parameter constraints") {
  PdParams p = kPd;
  p.r = p.q;
  CHECK_THROWS_AS(make_modified_pd(p), Error);
  CHECK_NOTHROW(make_modified_pd(p, false));
  p = kPd;
  p.c = 2.5;  // B > 2c fails
  try {
    make_modified_pd(p);
    FAIL("expected a constraint violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParameterConstraintViolated);
  }
}

TEST_CASE("PD frontier") {
  const EfficientFrontier f = make_frontier(make_modified_pd(kPd));
  CHECK(f.a_tilde[0] == JointAction{1, 0});
  CHECK(f.a_tilde[1] == JointAction{0, 1});
  CHECK(f.lambda[0] == Approx(0.25));
  CHECK(f.lambda[1] == Approx(0.25));
  CHECK(frontier_determinant(f) == Approx(16.0));
  const auto th = barycentric(f, std::vector<double>{2.0, 2.0});
  CHECK(th[0] == Approx(0.5));
  CHECK(th[1] == Approx(0.5));
}

TEST_CASE("custom matrix enumerates player 1 fastest") {
  const ReducedGame g = make_custom_matrix("t", {{"C", "D"}, {"L", "R"}},
                                           {{1, 0}, {2, 0}, {3, 0}, {4, 0}},
                                           {{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}, {0.4, 0.4}});
  CHECK(g.payoff(0, JointAction{1, 0}) == 2.0);
  CHECK(g.payoff(0, JointAction{0, 1}) == 3.0);
  CHECK(g.bad_prob(1, JointAction{1, 1}) == Approx(0.4));
  CHECK(profile_index(g.action_spaces(), JointAction{1, 1}) == 3);
}

TEST_CASE("tied preferred profiles are rejected") {
  const ReducedGame g = make_custom_matrix("tie", {{"A", "B"}, {"A", "B"}},
                                           {{2, 0}, {2, 0}, {0, 2}, {0, 1}},
                                           {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  try {
    preferred_profiles(g);
    FAIL("expected NonUniqueArgmax");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonUniqueArgmax);
  }
}

TEST_CASE("collinear frontier is singular") {
  const ReducedGame g = make_custom_matrix("flat", {{"A", "B"}, {"A", "B"}},
                                           {{1, 1}, {0, 0}, {0, 0}, {0.5, 0.5}},
                                           {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  CHECK_THROWS_AS(make_frontier(g), Error);
}

TEST_CASE("assumptions on the fixtures") {
  const ValidationReport pd = validate_assumptions(make_modified_pd(kPd));
  CHECK(pd.all_pass());
  CHECK(pd.a2.value == Approx(0.75));

  PdParams p = kPd;
  p.q = 0.5;
  p.r = 0.5;
  const ValidationReport flat = validate_assumptions(make_modified_pd(p, false));
  CHECK_FALSE(flat.a4.pass);
  CHECK(flat.a4.witness.find("i=1, j=2, a_j=D") != std::string::npos);

  CHECK(validate_assumptions(make_table3()).all_pass());
}

TEST_CASE("strict support looks at every profile") {
  // Full support on the preferred profiles, a certain signal elsewhere.
  const ReducedGame g = make_custom_matrix("support", {{"C", "D"}, {"C", "D"}},
                                           {{1.5, 1.5}, {4, 0}, {0, 4}, {1, 1}},
                                           {{0.0, 0.0}, {0.2, 0.2}, {0.2, 0.2}, {0.8, 0.8}});
  ValidationOptions loose;
  CHECK(validate_assumptions(g, loose).a3.pass);
  ValidationOptions strict;
  strict.strict_support = true;
  CHECK_FALSE(validate_assumptions(g, strict).a3.pass);
}
