#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ppekit/analysis.hpp"
#include "ppekit/builders.hpp"

using namespace ppekit;
using doctest::Approx;

TEST_CASE("format_number round-trips") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("linspace includes both ends") {
  const auto v = linspace(2.0, 50.0, 49);
  CHECK(v.size() == 49);
  CHECK(v.front() == 2.0);
  CHECK(v[1] == Approx(3.0));
  CHECK(v.back() == 50.0);
}

TEST_CASE("PD fraction point") {
  const SweepRow r = fraction_point(make_modified_pd(kPd), 0.0);
  CHECK(r.status == "ok");
  CHECK(r.fraction == Approx(2.0 / 3.0));
  CHECK(r.delta_min == Approx(7.0 / 9.0));
}

TEST_CASE("delta sweep on the PD switches at 7/9") {
  const auto rows = sweep_delta(make_modified_pd(kPd), {0.7, 0.77, 0.7778, 0.9});
  CHECK(rows[0].status == "delta_below_min");
  CHECK(rows[1].status == "delta_below_min");
  CHECK(rows[1].fraction == 0.0);
  CHECK(rows[2].status == "ok");
  CHECK(rows[3].fraction == Approx(2.0 / 3.0));
}

TEST_CASE("eta sweep") {
  const auto rows = sweep_eta(make_modified_pd(kPd), {0.2, 1.0 / 3.0, 0.4, 0.6});
  CHECK(rows[0].status == "cond3_fail");
  CHECK(rows[1].status == "ok");
  CHECK(rows[2].delta_min > rows[1].delta_min);
  CHECK(rows[3].status == "infeasible");
}

TEST_CASE("table 3 sweep point is infeasible") {
  const SweepRow r = fraction_point(make_table3(), 0.0);
  CHECK(r.status == "infeasible");
  CHECK(r.fraction == 0.0);
}

TEST_CASE("M/M/1 thresholds outside the detection window are degenerate") {
  Mm1Params m;
  m.resolution = 201;
  ProfileSearchOptions search;
  search.joint_budget = std::size_t{1} << 16;
  const auto rows = sweep_game_parameter(
      [m](double d0) {
        Mm1Params q = m;
        q.d0 = d0;
        return make_mm1(q);
      },
      {1.0, 2.0, 50.0}, search);
  CHECK(rows[0].status == "degenerate");
  CHECK(rows[1].fraction == Approx(0.75).epsilon(1e-3));
  CHECK(rows[1].status == "cond2_fail");
  CHECK(rows[2].status == "degenerate");
}

TEST_CASE("analysis CSV matches the golden file") {
  const ReducedGame g = make_modified_pd(kPd);
  const AnalysisResult r = analyze(g, std::nullopt, 0.8);
  std::ostringstream os;
  write_analysis_csv(os, g, r);
  std::ifstream golden(std::string(PPEKIT_SOURCE_DIR) + "/tests/golden/pd_analysis.csv");
  REQUIRE(golden);
  std::stringstream expected;
  expected << golden.rdbuf();
  CHECK(os.str() == expected.str());
}

TEST_CASE("re-feeding the reported floors reproduces the margins") {
  const ReducedGame g = make_contest({});
  const AnalysisResult a = analyze(g, std::nullopt, 0.95);
  const AnalysisResult b = analyze(g, a.report.mu, a.report.delta);
  CHECK(a.report.cond1.margin == b.report.cond1.margin);
  CHECK(a.report.cond2.margin == b.report.cond2.margin);
  CHECK(a.report.cond3.margin == b.report.cond3.margin);
  CHECK(a.report.cond4.margin == b.report.cond4.margin);
}

TEST_CASE("summary text") {
  const AnalysisResult r = analyze(make_modified_pd(kPd), std::nullopt, 0.8);
  std::ostringstream os;
  write_analysis_summary(os, r);
  CHECK(os.str().find("delta_min: 0.7777777777777777") != std::string::npos);
  CHECK(os.str().find("two-player: ") != std::string::npos);
}
