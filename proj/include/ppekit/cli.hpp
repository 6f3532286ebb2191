#pragma once

#include <ostream>

namespace ppekit {

// Exit codes: 0 pass, 1 analytic infeasibility or violation, 2 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppekit
