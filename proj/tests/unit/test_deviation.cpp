#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ppekit/builders.hpp"
#include "ppekit/deviation.hpp"
#include "ppekit/error.hpp"

using namespace ppekit;
using doctest::Approx;

TEST_CASE("PD deviation statistics") {
  const ReducedGame g = make_modified_pd(kPd);
  const EfficientFrontier f = make_frontier(g);
  const DeviationStats s = compute_stats(g, f);
  CHECK(s.alpha[0][1] == Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(s.alpha[1][0] == Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(s.alpha_witness[0][1] == 1.0);
  CHECK(std::isinf(s.beta[0][1]));
  CHECK(s.rho_bad[0] == Approx(0.2));

  const auto mu = mu_min(f, s);
  CHECK(mu[0] == Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(min_discount(f, s, mu) == Approx(7.0 / 9.0).epsilon(1e-14));

  const ConditionReport r = check_conditions(g, f, s, mu, 0.8);
  CHECK(r.all_pass());
  CHECK(r.regularity.regular);
  CHECK(r.weighted_mu == Approx(2.0 / 3.0));
  CHECK(r.regularity.vhat[0][0] == Approx(8.0 / 3.0));
  CHECK(r.regularity.vhat[0][1] == Approx(4.0 / 3.0));
  CHECK_FALSE(check_conditions(g, f, s, mu, 0.7).cond4.pass);
  CHECK_FALSE(check_prop1(g, f, 0));
}

TEST_CASE("NaN delta reports the bound only") {
  const ReducedGame g = make_modified_pd(kPd);
  const EfficientFrontier f = make_frontier(g);
  const DeviationStats s = compute_stats(g, f);
  const ConditionReport r = check_conditions(g, f, s, mu_min(f, s), std::nan(""));
  CHECK(std::isnan(r.cond4.margin));
  CHECK(r.delta_min == Approx(7.0 / 9.0));
}

TEST_CASE("contest deviation statistics") {
  const ReducedGame g = make_contest({});
  const EfficientFrontier f = make_frontier(g);
  const DeviationStats s = compute_stats(g, f);
  CHECK(s.alpha[0][1] == Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(std::isinf(s.beta[0][1]));
  CHECK(f.v_tilde[0][0] == Approx(0.7));
  const auto mu = mu_min(f, s);
  CHECK(mu[0] == Approx(0.3).epsilon(1e-9));
  CHECK(check_conditions(g, f, s, mu, 0.95).all_pass());
}

TEST_CASE("table 3 needs mu = 0.7 and is infeasible") {
  const ReducedGame g = make_table3();
  const EfficientFrontier f = make_frontier(g);
  const DeviationStats s = compute_stats(g, f);
  CHECK(f.lambda[0] == Approx(2.0 / 3.0));
  CHECK(s.alpha[2][0] == Approx(0.3));
  CHECK(s.alpha[1][0] == Approx(0.6));
  const auto mu = mu_min(f, s);
  for (double m : mu) CHECK(m == Approx(0.7));
  try {
    check_conditions(g, f, s, mu, 0.9);
    FAIL("expected InfeasibleMu");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasibleMu);
    CHECK(std::string(e.what()).find("Condition 3 infeasible") != std::string::npos);
  }
}

TEST_CASE("undetectable profitable deviation is a labeling violation") {
  // Player 2 gains from D at (D,C) but the bad signal does not move.
  const ReducedGame g = make_custom_matrix("undetected", {{"C", "D"}, {"C", "D"}},
                                           {{1.5, 1.5}, {4, 0}, {0, 4}, {1, 1}},
                                           {{0.1, 0.1}, {0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}});
  const EfficientFrontier f = make_frontier(g);
  try {
    compute_stats(g, f);
    FAIL("expected LabelingViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLabelingViolation);
  }
}

TEST_CASE("no profitable deviation gives alpha = -inf and a zero term") {
  // At each preferred profile the other player is already at a best response.
  const ReducedGame g = make_custom_matrix("aligned", {{"A", "B"}, {"A", "B"}},
                                           {{0.2, 0.2}, {3, 1}, {1, 3}, {0.1, 0.1}},
                                           {{0.5, 0.5}, {0.3, 0.3}, {0.3, 0.3}, {0.6, 0.6}});
  const EfficientFrontier f = make_frontier(g);
  const DeviationStats s = compute_stats(g, f);
  CHECK(std::isinf(s.alpha[0][1]));
  CHECK(s.alpha[0][1] < 0);
  CHECK(s.alpha_term(0, 1) == 0.0);
  CHECK(check_prop1(g, f, 0));
  const auto mu = mu_min(f, s);
  CHECK(std::isinf(mu[0]));
  const auto floors = default_mu(f, s);
  CHECK(floors[0] == Approx(1.0));
}

TEST_CASE("beta picks the cheapest signal-improving loss") {
  // At (B,A), player 2 can move to B (gain 1, bad +0.3) or C (loss 1, bad -0.2).
  const ReducedGame g = make_custom_matrix("beta", {{"A", "B", "C"}, {"A", "B", "C"}},
                                           {{0, 0}, {4, 0}, {0, 0},
                                            {0, 4}, {1, 1}, {0, 0},
                                            {0, 0}, {0, -1}, {0, 0}},
                                           {{0.5, 0.5}, {0.3, 0.3}, {0.5, 0.5},
                                            {0.3, 0.3}, {0.6, 0.6}, {0.5, 0.5},
                                            {0.5, 0.5}, {0.1, 0.1}, {0.5, 0.5}});
  const EfficientFrontier f = make_frontier(g);
  const RatioResult a = alpha(g, f, 0, 1);
  const RatioResult b = beta(g, f, 0, 1);
  CHECK(a.value == Approx(1.0 / 0.3));
  CHECK(a.witness == 1.0);
  CHECK(b.value == Approx(5.0));
  CHECK(b.witness == 2.0);
}

TEST_CASE("degenerate denominator") {
  EfficientFrontier f;
  f.a_tilde = {{0}, {1}};
  // Inconsistent by construction: lambda . v~^i = 1/4.
  f.v_tilde = {{0.5, 0.0}, {0.0, 0.5}};
  f.lambda = {0.5, 0.5};
  DeviationStats s;
  s.alpha = {{NAN, -kInfinity}, {-kInfinity, NAN}};
  s.rho_bad = {0.5, 0.5};
  CHECK_THROWS_AS(min_discount(f, s, {0.0, 0.0}), Error);
}
