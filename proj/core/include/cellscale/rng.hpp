#pragma once

#include <cstdint>
#include <random>

namespace cellscale {

// One splitmix64 step. Used only for seed mixing, never as the main stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-(n, trial) stream seed. Mixing after each xor keeps nearby
// (master, n, trial) triples from producing correlated streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                                 std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ trial);
}

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
// std::uniform_real_distribution is implementation-defined, so results
// would differ across standard libraries; this mapping is pinned.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace cellscale
