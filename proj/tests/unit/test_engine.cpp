#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "ppekit/builders.hpp"
#include "ppekit/engine.hpp"
#include "ppekit/error.hpp"

using namespace ppekit;
using doctest::Approx;

namespace {

EquilibriumConfig pd_config(double delta = 0.8) {
  return EquilibriumConfig::build(make_modified_pd(kPd), std::nullopt, delta, std::vector<double>{2.0, 2.0});
}

}  // namespace

TEST_CASE("PD first step from (2,2)") {
  const EquilibriumConfig c = pd_config();
  ContinuationState s;
  s.v = {2.0, 2.0};
  const Plan p = plan(c, s);
  CHECK(p.d[0] == Approx(2.0 / 7.0));
  CHECK(p.d[1] == Approx(2.0 / 7.0));
  CHECK(p.active == 1);  // ties go to the larger index
  CHECK(p.action == JointAction{0, 1});
  CHECK(p.next.good[0] == Approx(2.5 + 0.25 * (5.0 / 3.0) * 0.2));
  CHECK(p.next.good[1] == Approx(4.0 - p.next.good[0]));
  CHECK(p.next.bad[0] == Approx(2.5 - 0.25 * (5.0 / 3.0) * 0.8));
  CHECK(p.next.good[1] == Approx(active_continuation_closed_form(c, s.v, 1, Signal::kGood)));
  CHECK(p.next.bad[1] == Approx(active_continuation_closed_form(c, s.v, 1, Signal::kBad)));
  CHECK(promise_keeping_residual(c, s.v, 1, p.next) < 1e-12);
  CHECK(ic_slack(c, s.v, 1, p.next, 0, 1.0) == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("build validates its inputs") {
  CHECK_THROWS_AS(EquilibriumConfig::build(make_modified_pd(kPd), std::nullopt, 1.0), Error);
  try {
    EquilibriumConfig::build(make_modified_pd(kPd), std::nullopt, 0.7);
    FAIL("expected ConditionsNotMet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConditionsNotMet);
  }
  CHECK_THROWS_AS(
      EquilibriumConfig::build(make_modified_pd(kPd), std::nullopt, 0.8, std::vector<double>{2.0, 2.5}), Error);
  CHECK_THROWS_AS(
      EquilibriumConfig::build(make_modified_pd(kPd), std::nullopt, 0.8, std::vector<double>{1.0, 3.0}), Error);
  const EquilibriumConfig c = EquilibriumConfig::build(make_modified_pd(kPd), std::nullopt, 0.8);
  CHECK(c.v0[0] == Approx(2.0));
}

TEST_CASE("recorded signals replay exactly") {
  const EquilibriumConfig c = pd_config();
  const Trajectory t = run(c, recorded_signals({Signal::kGood, Signal::kBad, Signal::kBad}), 3);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[1].signal == Signal::kBad);
  CHECK(t.rows[1].v == t.rows[0].next.good);
  CHECK(t.final_state.v == t.rows[2].next.bad);
  CHECK_THROWS_AS(run(c, recorded_signals({Signal::kGood}), 2), Error);
}

TEST_CASE("sampled runs stay on V_mu") {
  const EquilibriumConfig c = pd_config();
  const Trajectory t = run(c, sampled_signals(c.game, 42), 500);
  for (const auto& row : t.rows) {
    CHECK(row.v[0] >= c.mu[0] - 1e-9);
    CHECK(row.v[1] >= c.mu[1] - 1e-9);
    CHECK(dot(c.frontier.lambda, row.v) == Approx(1.0).epsilon(1e-12));
  }
  const Trajectory again = run(c, sampled_signals(c.game, 42), 500);
  CHECK(again.final_state.v == t.final_state.v);
}

TEST_CASE("leaving the floor is reported") {
  const EquilibriumConfig c = pd_config();
  ContinuationState s;
  s.v = {c.mu[0] + 1e-6, 4.0 - c.mu[0] - 1e-6};
  Plan p = plan(c, s);
  p.next.bad[0] = c.mu[0] - 1e-3;
  try {
    advance(c, s, p, Signal::kBad);
    FAIL("expected FloorBreach");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFloorBreach);
  }
}

TEST_CASE("trajectory csv") {
  const EquilibriumConfig c = pd_config();
  const Trajectory t = run(c, recorded_signals({Signal::kGood}), 1);
  std::ostringstream os;
  write_trajectory_csv(os, t);
  const std::string s = os.str();
  CHECK(s.rfind("t,active,signal,v_1,v_2,d_1,d_2\n0,2,g,2,2,", 0) == 0);
}

TEST_CASE("relaxed incentives admit the M/M/1 game") {
  Mm1Params m;
  m.p = 2.0;
  m.d0 = 4.0;
  CHECK_THROWS_AS(EquilibriumConfig::build(make_mm1(m), std::nullopt, 0.95), Error);
  EngineOptions relaxed;
  relaxed.relax_incentive = true;
  const EquilibriumConfig c = EquilibriumConfig::build(make_mm1(m), std::nullopt, 0.95, std::nullopt, relaxed);
  CHECK(c.players() == 3);
  CHECK_FALSE(c.report.cond2.pass);
}
