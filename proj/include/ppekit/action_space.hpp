#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ppekit {

// A player's action set. Finite spaces hold labeled actions addressed by
// index (the action value is the index as a double); interval spaces are
// compact [lower, upper] ranges evaluated on a uniform grid of `resolution`
// points for numeric sup/inf.
class ActionSpace {
 public:
  static ActionSpace finite(std::vector<std::string> labels);
  static ActionSpace interval(double lower, double upper, int resolution = 1001);

  bool is_finite() const noexcept { return finite_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  int resolution() const noexcept { return resolution_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // Number of grid points (labels for finite spaces).
  std::size_t size() const noexcept;

  // Grid of action values; for interval spaces the endpoints are included.
  std::vector<double> grid() const;

  // Uniform grid with a different point count (finite spaces ignore `points`).
  std::vector<double> grid(int points) const;

  double grid_step() const noexcept;

  ActionSpace with_resolution(int resolution) const;

  // Index of a label, or -1.
  int index_of(const std::string& label) const;

  std::string describe(double action) const;

  // Parses a label (finite) or a number (interval); throws on mismatch.
  double parse(const std::string& text) const;

 private:
  ActionSpace() = default;

  bool finite_ = true;
  std::vector<std::string> labels_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  int resolution_ = 0;
};

}  // namespace ppekit
