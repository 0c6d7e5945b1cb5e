#pragma once

#include <cstdint>
#include <random>

namespace modroute {

/// The one random engine used everywhere. mt19937_64 output is fully
/// specified by the standard, unlike the std distributions, so the helpers
/// below draw from raw engine bits to stay identical across toolchains.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// One fair coin flip.
inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace modroute
