#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace falqon {

// All randomness flows through std::mt19937_64, whose output sequence is
// fixed by the C++ standard, seeded explicitly by the caller. The sampling
// helpers below are hand-rolled because the standard <random> distributions
// are not bit-portable across library implementations.
using RngEngine = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64";

/// Unbiased integer in [0, bound) via rejection sampling. bound must be > 0.
inline std::uint64_t uniform_index(RngEngine& rng, std::uint64_t bound) {
  // Reject draws below 2^64 mod bound; the survivors cover an exact
  // multiple of bound.
  const std::uint64_t min = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= min) {
      return r % bound;
    }
  }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(RngEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace falqon
