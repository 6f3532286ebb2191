#pragma once

#include <functional>

#include "ppekit/action_space.hpp"

namespace ppekit {

struct Extremum {
  double value;   // -inf / +inf when no admissible point exists
  double action;  // maximizing (minimizing) action; NaN when none
  bool found;
};

// Numeric sup over a single player's action space. Finite spaces are
// enumerated. Interval spaces are scanned on their grid, then one
// golden-section pass refines inside the two cells around the incumbent.
// `f` returns -inf at inadmissible points.
Extremum maximize_over(const ActionSpace& space, const std::function<double(double)>& f,
                       bool refine = true);

// Numeric inf; `f` returns +inf at inadmissible points.
Extremum minimize_over(const ActionSpace& space, const std::function<double(double)>& f,
                       bool refine = true);

}  // namespace ppekit
