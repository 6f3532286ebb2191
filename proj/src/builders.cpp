#include "ppekit/builders.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ppekit/error.hpp"

namespace ppekit {

namespace {

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorCode::kParameterConstraintViolated, what);
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

std::size_t as_index(double a) { return static_cast<std::size_t>(std::lround(a)); }

// pi(y_g | a) for the PD.
double pd_good(const PdParams& pr, std::span<const double> a) {
  const std::size_t defects = as_index(a[0]) + as_index(a[1]);
  return defects == 0 ? pr.p : (defects == 1 ? pr.q : pr.r);
}

Payoffs pd_payoffs(const PdParams& pr, std::span<const double> a) {
  const std::size_t a1 = as_index(a[0]);
  const std::size_t a2 = as_index(a[1]);
  if (a1 == 0 && a2 == 0) return {pr.c, pr.c};
  if (a1 == 0) return {0.0, pr.B};
  if (a2 == 0) return {pr.B, 0.0};
  return {pr.b, pr.b};
}

void check_contest(const ContestParams& pr) {
  if (pr.n < 2) violated("contest needs n >= 2");
  if (!(pr.R > 0.0)) violated("contest needs R > 0");
  if (!(pr.c > 0.0)) violated("contest needs c > 0");
  if (!(pr.eta > 0.0 && pr.eta < 1.0)) violated("contest needs eta in (0, 1)");
  if (!(pr.kappa > 0.0 && pr.kappa < 1.0)) violated("contest needs kappa in (0, 1)");
  if (!(pr.R * pr.eta > pr.c)) violated("contest needs R*eta > c");
  if (!(pr.kappa > 0.5 * (pr.eta - pr.c / pr.R))) violated("contest needs kappa > (eta - c/R)/2");
}

}  // namespace

ReducedGame make_modified_pd(const PdParams& pr, bool check) {
  if (check) {
    if (!(pr.B > 2.0 * pr.c && 2.0 * pr.c > 2.0 * pr.b && pr.b > 0.0)) violated("PD needs B > 2c > 2b > 0");
    if (!(pr.p < 1.0 && pr.p >= pr.q && pr.q > pr.r && pr.r > 0.0)) violated("PD needs 1 > p >= q > r > 0");
  }
  std::vector<ActionSpace> spaces(2, ActionSpace::finite({"C", "D"}));
  PayoffFn pay = [pr](std::span<const double> a) { return pd_payoffs(pr, a); };
  BadSignalFn bad = [pr](std::size_t, std::span<const double> a) { return 1.0 - pd_good(pr, a); };
  return ReducedGame("modified_pd", std::move(spaces), std::move(pay), std::move(bad));
}

OutcomeModel pd_outcome_model(const PdParams& pr) {
  // Z = A x Y, outcome index = 2 * profile + y with y = 0 good, 1 bad.
  OutcomeModel m;
  m.actions.assign(2, ActionSpace::finite({"C", "D"}));
  for (const char* a1 : {"C", "D"}) {
    for (const char* a2 : {"C", "D"}) {
      for (const char* y : {"g", "b"}) m.outcomes.push_back(std::string(a1) + a2 + ":" + y);
    }
  }
  m.pi = [pr](std::span<const double> a) {
    Distribution d(8, 0.0);
    const std::size_t prof = 2 * as_index(a[0]) + as_index(a[1]);
    const double g = pd_good(pr, a);
    d[2 * prof] = g;
    d[2 * prof + 1] = 1.0 - g;
    return d;
  };
  m.utility = [pr](std::size_t i, double, std::size_t z) {
    const std::size_t prof = z / 2;
    const double a[2] = {static_cast<double>(prof / 2), static_cast<double>(prof % 2)};
    return pd_payoffs(pr, a)[i];
  };
  return m;
}

double contest_win_prob(const ContestParams& pr, std::span<const double> a, std::size_t i) {
  double others = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j != i) others += a[j];
  }
  return a[i] * positive_part(pr.eta - pr.kappa * others);
}

OutcomeModel contest_outcome_model(const ContestParams& pr) {
  OutcomeModel m;
  m.actions.assign(pr.n, ActionSpace::interval(0.0, 1.0, pr.resolution));
  m.outcomes.push_back("none");
  for (std::size_t k = 1; k <= pr.n; ++k) m.outcomes.push_back("win" + std::to_string(k));
  m.pi = [pr](std::span<const double> a) {
    Distribution d(pr.n + 1, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < pr.n; ++k) {
      d[k + 1] = contest_win_prob(pr, a, k);
      total += d[k + 1];
    }
    d[0] = 1.0 - total;
    return d;
  };
  m.utility = [pr](std::size_t i, double ai, std::size_t z) {
    return (z == i + 1 ? pr.R : 0.0) - pr.c * ai;
  };
  return m;
}

SignalGame make_contest_rule2(const ContestParams& pr, bool check) {
  if (check) check_contest(pr);
  const OutcomeModel m = contest_outcome_model(pr);
  return reduce(m, identity_device(m.outcomes), identity_rule(m.outcomes), "contest_rule2");
}

ReducedGame make_contest(const ContestParams& pr, bool check) {
  if (check) check_contest(pr);
  const OutcomeModel m = contest_outcome_model(pr);
  AnnouncementRule rule;
  rule.signals = {"y_b", "y_g"};
  for (std::size_t z = 0; z <= pr.n; ++z) rule.psi.push_back(z == 0 ? std::vector<double>{1.0, 0.0}
                                                                      : std::vector<double>{0.0, 1.0});
  const SignalGame binary = reduce(m, identity_device(m.outcomes), rule, "contest");
  return coarsen(binary, {0, 1}, {0});
}

double mm1_utility(const Mm1Params& pr, std::span<const double> a, std::size_t i) {
  double s = 0.0;
  for (double x : a) s += x;
  const double own = std::pow(a[i], pr.p);
  if (s <= pr.chi - pr.eps) return own * (pr.chi - 0.5 * pr.eps - s);
  if (s < pr.chi) return own * (pr.chi - s) * (pr.chi - s) / (2.0 * pr.eps);
  return 0.0;
}

double mm1_good_prob(const Mm1Params& pr, std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x;
  return std::clamp(pr.chi - s - 1.0 / pr.d0, 0.0, pr.eps) / pr.eps;
}

ReducedGame make_mm1(const Mm1Params& pr, bool check) {
  if (check) {
    if (pr.n < 2) violated("mm1 needs n >= 2");
    if (!(pr.chi > 0.0)) violated("mm1 needs chi > 0");
    if (!(pr.p > 0.0)) violated("mm1 needs p > 0");
    if (!(pr.eps > 0.0 && pr.eps <= 2.0 * pr.chi / (2.0 + pr.p))) violated("mm1 needs 0 < eps <= 2 chi/(2+p)");
    if (!(pr.d0 > 0.0)) violated("mm1 needs d0 > 0");
  }
  std::vector<ActionSpace> spaces(pr.n, ActionSpace::interval(0.0, pr.chi, pr.resolution));
  PayoffFn pay = [pr](std::span<const double> a) {
    Payoffs u(pr.n);
    for (std::size_t i = 0; i < pr.n; ++i) u[i] = mm1_utility(pr, a, i);
    return u;
  };
  BadSignalFn bad = [pr](std::size_t, std::span<const double> a) { return 1.0 - mm1_good_prob(pr, a); };
  return ReducedGame("mm1_sharing", std::move(spaces), std::move(pay), std::move(bad));
}

ReducedGame make_table3() {
  // Actions l = 0, m = 1, h = 2.
  std::vector<ActionSpace> spaces(3, ActionSpace::finite({"l", "m", "h"}));
  PayoffFn pay = [](std::span<const double> a) -> Payoffs {
    const std::size_t k = 9 * as_index(a[0]) + 3 * as_index(a[1]) + as_index(a[2]);
    switch (k) {
      case 9 * 0 + 3 * 2 + 0: return {0.0, 1.0, 0.5};   // l h l
      case 9 * 1 + 3 * 2 + 0: return {0.1, 0.0, 0.0};   // m h l
      case 9 * 2 + 3 * 0 + 0: return {1.0, 0.5, 0.0};   // h l l
      case 9 * 2 + 3 * 1 + 0: return {0.0, 0.55, 0.0};  // h m l
      case 9 * 2 + 3 * 2 + 0: return {0.2, 0.6, 0.0};   // h h l
      case 9 * 0 + 3 * 2 + 1: return {0.0, 0.0, 0.55};  // l h m
      case 9 * 2 + 3 * 0 + 1: return {0.0, 0.0, 0.1};   // h l m
      case 9 * 0 + 3 * 0 + 2: return {0.5, 0.0, 1.0};   // l l h
      case 9 * 0 + 3 * 1 + 2: return {0.0, 0.1, 0.0};   // l m h
      case 9 * 0 + 3 * 2 + 2: return {0.0, 0.2, 0.6};   // l h h
      case 9 * 1 + 3 * 0 + 2: return {0.55, 0.0, 0.0};  // m l h
      case 9 * 2 + 3 * 0 + 2: return {0.6, 0.0, 0.2};   // h l h
      default: return {0.0, 0.0, 0.0};
    }
  };
  BadSignalFn bad = [](std::size_t, std::span<const double> a) {
    std::size_t count[3] = {0, 0, 0};
    for (double x : a) ++count[as_index(x)];
    double good = 1.0 / 3.0;
    if (count[2] == 1 && count[0] == 2) good = 2.0 / 3.0;
    if (count[0] == 1 && count[1] == 1 && count[2] == 1) good = 0.5;
    return 1.0 - good;
  };
  return ReducedGame("table3", std::move(spaces), std::move(pay), std::move(bad));
}

std::size_t profile_index(const std::vector<ActionSpace>& spaces, std::span<const double> a) {
  std::size_t k = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    k += stride * as_index(a[i]);
    stride *= spaces[i].size();
  }
  return k;
}

ReducedGame make_custom_matrix(std::string name, std::vector<std::vector<std::string>> labels,
                               std::vector<std::vector<double>> payoffs, std::vector<std::vector<double>> bad) {
  const std::size_t n = labels.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "custom_matrix needs at least two players");
  std::vector<ActionSpace> spaces;
  std::size_t profiles = 1;
  for (auto& l : labels) {
    spaces.push_back(ActionSpace::finite(std::move(l)));
    profiles *= spaces.back().size();
  }
  if (payoffs.size() != profiles || bad.size() != profiles) {
    std::ostringstream os;
    os << "custom_matrix expects " << profiles << " profiles, got " << payoffs.size() << " payoff rows and "
       << bad.size() << " signal rows";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  for (std::size_t k = 0; k < profiles; ++k) {
    if (payoffs[k].size() != n) throw Error(ErrorCode::kDimensionMismatch, "payoff row needs one entry per player");
    if (bad[k].size() == 1) bad[k].assign(n, bad[k][0]);
    if (bad[k].size() != n) throw Error(ErrorCode::kDimensionMismatch, "signal row needs one entry per label");
    for (double x : bad[k]) {
      if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "bad-signal probability outside [0, 1]");
    }
  }
  PayoffFn pay = [spaces, payoffs](std::span<const double> a) { return payoffs[profile_index(spaces, a)]; };
  BadSignalFn sig = [spaces, bad](std::size_t label, std::span<const double> a) {
    return bad[profile_index(spaces, a)].at(label);
  };
  return ReducedGame(std::move(name), spaces, std::move(pay), std::move(sig));
}

}  // namespace ppekit
