#include "ppekit/search.hpp"

#include <cmath>
#include <limits>

namespace ppekit {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr int kGoldenIterations = 80;

void golden_refine(double lo, double hi, const std::function<double(double)>& f, Extremum& best) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  auto consider = [&best](double x, double fx) {
    if (fx > best.value) {
      best.value = fx;
      best.action = x;
      best.found = true;
    }
  };
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < kGoldenIterations && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
}

}  // namespace

Extremum maximize_over(const ActionSpace& space, const std::function<double(double)>& f,
                       bool refine) {
  const auto grid = space.grid();
  Extremum best{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN(),
                false};
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = f(grid[k]);
    if (v > best.value) {
      best.value = v;
      best.action = grid[k];
      best.found = true;
      best_index = k;
    }
  }
  if (!best.found || !refine || space.is_finite() || grid.size() < 2) return best;
  const double lo = grid[best_index == 0 ? 0 : best_index - 1];
  const double hi = grid[best_index + 1 < grid.size() ? best_index + 1 : best_index];
  const double incumbent = best.action;
  if (lo < incumbent) golden_refine(lo, incumbent, f, best);
  if (incumbent < hi) golden_refine(incumbent, hi, f, best);
  return best;
}

Extremum minimize_over(const ActionSpace& space, const std::function<double(double)>& f,
                       bool refine) {
  Extremum r = maximize_over(space, [&f](double x) { return -f(x); }, refine);
  r.value = -r.value;
  return r;
}

}  // namespace ppekit
