#pragma once

#include <cstdint>
#include <random>

namespace mhc {

using Rng = std::mt19937_64;

// splitmix64; used to derive independent seeds from one base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(base ^ splitmix64(a)) ^ b);
}

// Uniform double in [0,1) with 53 random bits. Kept hand-rolled so the draw
// sequence is identical on every platform for a given seed.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline double uniform_between(Rng& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

// Uniform integer in [0, n). The modulo bias is negligible for the small n
// used here and keeps draws portable.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace mhc
