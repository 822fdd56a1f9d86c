#pragma once

#include <cstdint>
#include <random>

namespace termtag {

// Fixed seed used whenever the caller does not pass one.
inline constexpr std::uint64_t kDefaultSeed = 20210915;

// Derives an independent stream seed from a base seed and a stream index
// (splitmix64 finalizer), so per-sentence randomness does not depend on
// processing order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

}  // namespace termtag
