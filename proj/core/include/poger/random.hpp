#pragma once

// Deterministic, platform-independent randomness helpers. The std <random>
// distributions are implementation-defined, so everything that must be
// reproducible across compilers goes through these instead.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string_view>

namespace poger {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over bytes; stable across platforms, used for cache keys and
// content-derived seeds.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// Uniform double in [0,1) from the top 53 bits.
inline double u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform01(std::mt19937_64& rng) { return u01(rng()); }

// Standard normal via Box-Muller from a content key; deterministic.
inline double normal_from_key(std::uint64_t key) {
  std::uint64_t s = key;
  double u1 = u01(splitmix64(s));
  double u2 = u01(splitmix64(s));
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Inverse-CDF draw from an explicit probability vector. O(n) but exact and
// portable; fine at the vocabulary sizes used here.
inline int categorical_sample(std::span<const double> probs,
                              std::mt19937_64& rng) {
  double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;  // guards rounding at u ~ 1
}

}  // namespace poger
