#include <doctest.h>

#include "fixtures.hpp"
#include "ppekit/builders.hpp"
#include "ppekit/elaborated.hpp"
#include "ppekit/error.hpp"

using namespace ppekit;
using doctest::Approx;

namespace {

// Announce only the y component of z = (a, y).
AnnouncementRule project_signal(std::size_t outcomes) {
  AnnouncementRule r;
  r.signals = {"y_g", "y_b"};
  for (std::size_t z = 0; z < outcomes; ++z) {
    r.psi.push_back(z % 2 == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0});
  }
  return r;
}

}  // namespace

TEST_CASE("PD elaborated form reduces to the reduced form") {
  const OutcomeModel m = pd_outcome_model(kPd);
  const SignalGame sg = reduce(m, identity_device(m.outcomes), project_signal(m.outcomes.size()), "pd");
  const ReducedGame g = coarsen(sg, {0, 1}, {1});
  const ReducedGame ref = make_modified_pd(kPd);
  for (double a1 : {0.0, 1.0}) {
    for (double a2 : {0.0, 1.0}) {
      const JointAction a{a1, a2};
      CHECK(g.payoff(0, a) == Approx(ref.payoff(0, a)));
      CHECK(g.payoff(1, a) == Approx(ref.payoff(1, a)));
      CHECK(g.bad_prob(0, a) == Approx(ref.bad_prob(0, a)));
      CHECK(g.bad_prob(1, a) == Approx(ref.bad_prob(1, a)));
    }
  }
}

TEST_CASE("reduce rejects kernels that are not stochastic") {
  const OutcomeModel m = pd_outcome_model(kPd);
  MeasurementDevice d = identity_device(m.outcomes);
  d.phi[0][0] = 0.5;
  CHECK_THROWS_AS(reduce(m, d, identity_rule(d.measurements), "bad"), Error);
}

TEST_CASE("SignalGame sampling follows the distribution") {
  const OutcomeModel m = pd_outcome_model(kPd);
  const SignalGame sg = reduce(m, identity_device(m.outcomes), project_signal(m.outcomes.size()), "pd");
  const JointAction cc{0, 0};
  CHECK(sg.sample(cc, 0.85) == 0);
  CHECK(sg.sample(cc, 0.95) == 1);
}

TEST_CASE("coarsening a cell that never occurs is degenerate") {
  const OutcomeModel m = pd_outcome_model(kPd);
  const SignalGame sg = reduce(m, identity_device(m.outcomes), project_signal(m.outcomes.size()), "pd");
  try {
    coarsen(sg, {0, 0}, {1});
    FAIL("expected DegenerateCell");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateCell);
  }
}

TEST_CASE("contest rule 1 matches the closed form") {
  const ContestParams p;
  const ReducedGame g = make_contest(p);
  for (const JointAction& a : {JointAction{1.0, 0.0}, JointAction{0.3, 0.7}, JointAction{0.5, 0.5}}) {
    const double w1 = contest_win_prob(p, a, 0);
    const double w2 = contest_win_prob(p, a, 1);
    CHECK(g.bad_prob(0, a) == Approx(1.0 - w1 - w2));
    CHECK(g.payoff(0, a) == Approx(p.R * w1 - p.c * a[0]));
  }
  const SignalGame rule2 = make_contest_rule2(p);
  CHECK(rule2.signals().size() == p.n + 1);
}
