#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppekit {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyActionSpace,
  kNonUniqueArgmax,
  kSingularFrontier,
  kNonPositiveWeight,
  kDimensionMismatch,
  kDegenerateCell,
  kParameterConstraintViolated,
  kLabelingViolation,
  kInfeasibleMu,
  kDegenerateDenominator,
  kNonpositiveDenominator,
  kConditionsNotMet,
  kFloorBreach,
  kUnsupportedDimension,
  kTruncationTooCoarse,
  kParseError,
  kUnknownSweepParameter,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; the code identifies the
// failure class so callers (the CLI in particular) can map it to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppekit
