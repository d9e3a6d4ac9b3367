// seeding.hpp — deterministic derivation of per-sample RNG seeds.
#pragma once

#include <cstdint>

namespace qca {

// splitmix64 output function (Steele, Lea, Flood 2014). Used as a mixer so
// that derived seeds are decorrelated even for adjacent indices.
inline std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// The index-th seed in the splitmix64 stream started at seed. Stable across
// platforms and independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace qca
