#include "ppekit/action_space.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ppekit/error.hpp"

namespace ppekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyActionSpace: return "EmptyActionSpace";
    case ErrorCode::kNonUniqueArgmax: return "NonUniqueArgmax";
    case ErrorCode::kSingularFrontier: return "SingularFrontier";
    case ErrorCode::kNonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDegenerateCell: return "DegenerateCell";
    case ErrorCode::kParameterConstraintViolated: return "ParameterConstraintViolated";
    case ErrorCode::kLabelingViolation: return "LabelingViolation";
    case ErrorCode::kInfeasibleMu: return "InfeasibleMu";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kNonpositiveDenominator: return "NonpositiveDenominator";
    case ErrorCode::kConditionsNotMet: return "ConditionsNotMet";
    case ErrorCode::kFloorBreach: return "FloorBreach";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kTruncationTooCoarse: return "TruncationTooCoarse";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownSweepParameter: return "UnknownSweepParameter";
  }
  return "Unknown";
}

ActionSpace ActionSpace::finite(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw Error(ErrorCode::kEmptyActionSpace, "finite action space needs at least one label");
  }
  ActionSpace s;
  s.finite_ = true;
  s.labels_ = std::move(labels);
  s.lower_ = 0.0;
  s.upper_ = static_cast<double>(s.labels_.size() - 1);
  s.resolution_ = static_cast<int>(s.labels_.size());
  return s;
}

ActionSpace ActionSpace::interval(double lower, double upper, int resolution) {
  if (!(lower < upper)) {
    throw Error(ErrorCode::kEmptyActionSpace, "interval action space needs lower < upper");
  }
  if (resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument, "interval grid resolution must be >= 2");
  }
  ActionSpace s;
  s.finite_ = false;
  s.lower_ = lower;
  s.upper_ = upper;
  s.resolution_ = resolution;
  return s;
}

std::size_t ActionSpace::size() const noexcept {
  return finite_ ? labels_.size() : static_cast<std::size_t>(resolution_);
}

std::vector<double> ActionSpace::grid() const { return grid(resolution_); }

std::vector<double> ActionSpace::grid(int points) const {
  std::vector<double> g;
  if (finite_) {
    g.reserve(labels_.size());
    for (std::size_t k = 0; k < labels_.size(); ++k) g.push_back(static_cast<double>(k));
    return g;
  }
  if (points < 2) points = 2;
  g.reserve(static_cast<std::size_t>(points));
  const double span = upper_ - lower_;
  for (int k = 0; k < points; ++k) {
    // Endpoints exact; interior points computed from the lower end.
    if (k == points - 1) {
      g.push_back(upper_);
    } else {
      g.push_back(lower_ + span * static_cast<double>(k) / static_cast<double>(points - 1));
    }
  }
  return g;
}

double ActionSpace::grid_step() const noexcept {
  if (finite_) return 1.0;
  return (upper_ - lower_) / static_cast<double>(resolution_ - 1);
}

ActionSpace ActionSpace::with_resolution(int resolution) const {
  if (finite_) return *this;
  return interval(lower_, upper_, resolution);
}

int ActionSpace::index_of(const std::string& label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) return static_cast<int>(k);
  }
  return -1;
}

std::string ActionSpace::describe(double action) const {
  if (finite_) {
    const auto k = static_cast<long>(std::lround(action));
    if (k >= 0 && static_cast<std::size_t>(k) < labels_.size()) return labels_[static_cast<std::size_t>(k)];
    return "?";
  }
  std::ostringstream os;
  os.precision(10);
  os << action;
  return os.str();
}

double ActionSpace::parse(const std::string& text) const {
  if (finite_) {
    const int k = index_of(text);
    if (k < 0) throw Error(ErrorCode::kInvalidArgument, "unknown action label '" + text + "'");
    return static_cast<double>(k);
  }
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kInvalidArgument, "expected a numeric action, got '" + text + "'");
  }
  if (value < lower_ || value > upper_) {
    throw Error(ErrorCode::kInvalidArgument, "action " + text + " outside the action interval");
  }
  return value;
}

}  // namespace ppekit
