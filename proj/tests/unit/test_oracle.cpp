#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "ppekit/builders.hpp"
#include "ppekit/error.hpp"
#include "ppekit/oracle.hpp"

using namespace ppekit;
using doctest::Approx;

namespace {

struct Pd {
  ReducedGame g = make_modified_pd(kPd);
  EfficientFrontier f = make_frontier(g);
  DeviationStats s = compute_stats(g, f);
  std::vector<double> mu = mu_min(f, s);
};

}  // namespace

TEST_CASE("PD decomposition at a corner") {
  const Pd pd;
  const std::vector<double> corner{8.0 / 3.0, 4.0 / 3.0};
  const DecomposabilityResult r = decomposable(pd.g, pd.f, pd.s, pd.mu, 0.8, corner);
  CHECK(r.feasible);
  CHECK(r.active == 0);
  // Promise keeping for the chosen continuations.
  const double rb = pd.s.rho_bad[0];
  for (std::size_t k = 0; k < 2; ++k) {
    const double value = 0.2 * pd.f.v_tilde[0][k] + 0.8 * ((1 - rb) * r.gamma_good[k] + rb * r.gamma_bad[k]);
    CHECK(value == Approx(corner[k]).epsilon(1e-9));
  }
  CHECK(std::isnan(r.kappa_plus[0]));
  CHECK(r.kappa_plus[1] == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("points outside V_mu are not decomposable") {
  const Pd pd;
  const DecomposabilityResult r = decomposable(pd.g, pd.f, pd.s, pd.mu, 0.8, {3.5, 0.5});
  CHECK_FALSE(r.feasible);
  CHECK(r.active == -1);
}

TEST_CASE("PD self-generation brackets delta_mu") {
  const Pd pd;
  CHECK(is_self_generating(pd.g, pd.f, pd.s, pd.mu, 0.80, 51).self_generating);
  const SelfGenerationResult low = is_self_generating(pd.g, pd.f, pd.s, pd.mu, 0.75, 51);
  CHECK_FALSE(low.self_generating);
  CHECK(low.failures > 0);
  CHECK(low.points == 51);
  std::ostringstream os;
  write_oracle_csv(os, low);
  CHECK(os.str().rfind("v_1,v_2,feasible,margin,active,binding\n", 0) == 0);
}

TEST_CASE("self-generation is deterministic across thread counts") {
  const Pd pd;
  OracleOptions one;
  one.threads = 1;
  OracleOptions many;
  many.threads = 4;
  const auto a = is_self_generating(pd.g, pd.f, pd.s, pd.mu, 0.78, 41, one);
  const auto b = is_self_generating(pd.g, pd.f, pd.s, pd.mu, 0.78, 41, many);
  CHECK(a.worst_point == b.worst_point);
  CHECK(a.worst_margin == b.worst_margin);
}

TEST_CASE("two-player characterization of the PD") {
  const Pd pd;
  const TwoPlayerCharacterization c = two_player(pd.g, pd.f, pd.s);
  CHECK(c.kind == TwoPlayerCase::kInterval);
  CHECK(c.delta_star == Approx(7.0 / 9.0));
  CHECK(c.mu_bar[0] == Approx(4.0 / 3.0));
  CHECK_FALSE(c.extreme_points_only);
}

TEST_CASE("two-player characterization without interior payoffs") {
  // B < 2qb/(q-r): the floors add up past the frontier.
  PdParams p = kPd;
  p.B = 2.5;
  p.c = 1.2;
  const ReducedGame g = make_modified_pd(p);
  const EfficientFrontier f = make_frontier(g);
  const TwoPlayerCharacterization c = two_player(g, f, compute_stats(g, f));
  CHECK(c.kind == TwoPlayerCase::kNoEfficientPPE);
  CHECK(c.extreme_points_only);
}

TEST_CASE("efficient payoff set of the PD") {
  const Pd pd;
  const EfficientSet e = efficient_payoff_set(pd.g, pd.f, pd.s, 0.9);
  CHECK_FALSE(e.empty);
  CHECK(e.converged);
  CHECK(e.low[0] == Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(e.high[0] == Approx(8.0 / 3.0).epsilon(1e-6));
  const EfficientSet none = efficient_payoff_set(pd.g, pd.f, pd.s, 0.6);
  CHECK(none.empty);
}
