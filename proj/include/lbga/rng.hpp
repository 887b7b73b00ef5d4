#pragma once

#include <cstdint>

namespace lbga {

// Seeds and random numbers used here must be identical on every platform,
// so nothing goes through the implementation-defined <random> distributions.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a parent seed and a counter.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL + 1));
}

/// Uniform double in [0, 1) built from the top 53 bits.
constexpr double to_unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based uniform draw: the value depends only on (seed, a, b), so
/// draws can be evaluated in any order.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
  return to_unit_double(derive_seed(derive_seed(seed, a), b));
}

} // namespace lbga
