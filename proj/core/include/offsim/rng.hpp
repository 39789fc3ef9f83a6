#pragma once

#include <cstdint>
#include <random>

#include "offsim/gf2.hpp"

namespace offsim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent per-trial streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(mix_seed(seed, stream));
}

inline Word random_word(Rng& rng, int width) {
  return static_cast<Word>(rng()) & width_mask(width);
}

// Uniform in [0, bound) without modulo bias.
inline std::uint64_t random_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

// Uniform double in [0, 1) with 53 random bits.
inline double random_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace offsim
