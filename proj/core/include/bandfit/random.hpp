#pragma once

#include <cstdint>

namespace bandfit {

// SplitMix64 (Steele, Lea & Flood): state += 0x9E3779B97F4A7C15, then the
// output mix with multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
// Used for every seeded generator in the library so corpora are reproducible
// across platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one variate per call, no caching).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace bandfit
