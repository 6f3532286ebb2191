#pragma once

#include <cstdint>

namespace ppekit {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Top 53 bits as a double in [0, 1).
constexpr double to_unit_double(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Counter-based stream: the draw for (seed, stream, counter) is a pure
// function of the three keys, so results do not depend on evaluation order or
// on how episodes are spread over threads.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream ^ 0x632be59bd9b4e019ULL))) {}

  constexpr double uniform(std::uint64_t counter) const noexcept {
    return to_unit_double(mix64(key_ ^ mix64(counter + 0x2545f4914f6cdd1dULL)));
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace ppekit
