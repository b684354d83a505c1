#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace otap {

// splitmix64 finalizer; used to derive independent seed streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b), c);
}

inline std::uint64_t hash_tag(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

// Uniform double in [0, 1). Bit-stable across platforms, unlike
// std::uniform_real_distribution.
inline double next_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline int next_int(Rng& rng, int n) {
  return static_cast<int>(next_double(rng) * n);
}

inline double next_uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * next_double(rng);
}

}  // namespace otap
