#pragma once

#include <cstdint>

#include "norminv.hpp"

namespace ltport {

// SplitMix64 finalizer (Steele, Lea & Flood 2014). Also used to derive
// per-path substream seeds, so any two implementations of this library
// produce identical draws for the same (seed, path index).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream: 64-bit state advanced by the golden-ratio increment.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0, 1); 53-bit mantissa, offset by half
  // an ulp so 0 is never returned.
  double next_uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // Standard normal via the inverse CDF; one uniform per draw.
  double next_normal() { return inverse_normal_cdf(next_uniform()); }

private:
  std::uint64_t state_;
};

// Substream seed for one path. The global seed is mixed with the path
// index so substreams are decorrelated and order-independent.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 1));
}

} // namespace ltport
