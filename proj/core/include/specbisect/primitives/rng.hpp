#pragma once

#include <cstdint>

namespace specbisect {

// Counter-based random stream: word k of stream `seed` is a pure function of (seed, k),
// so any block of the stream can be addressed without generating what precedes it.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  // Stream positioned `offset` words further on.
  RngState advanced(std::uint64_t offset) const { return {seed, counter + offset}; }
};

// SplitMix64 output function applied to the Weyl sequence seed + (k+1) * golden.
inline std::uint64_t rng_word(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t next_word(RngState& s) { return rng_word(s.seed, s.counter++); }

// Uniform double in [0, 1) with 53 random bits; used only by test-matrix generators.
inline double next_unit_double(RngState& s) {
  return static_cast<double>(next_word(s) >> 11) * 0x1p-53;
}

}  // namespace specbisect
