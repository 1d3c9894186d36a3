// Counter-based random numbers (Philox4x32-10, Salmon et al. 2011).
//
// Every random quantity in a run is a pure function of (seed, index, purpose),
// so how trials are split across workers never changes the result.

#pragma once

#include <array>
#include <cstdint>

namespace mpa::rng {

using Block = std::array<std::uint32_t, 4>;

/// One Philox4x32 block with 10 rounds.
Block philox4x32(Block counter, std::array<std::uint32_t, 2> key);

/// Distinct streams drawn for the same trial index.
enum class Purpose : std::uint32_t {
  kSource = 0,    // lambda and the alternation coin
  kDispatch = 1,  // Alice's and Bob's binomial draws
  kSettings = 2,  // protocol setting choices
};

/// 53-bit uniform double in [0, 1) from the top bits of a 64-bit word.
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Two independent 64-bit words for (seed, index, purpose).
std::array<std::uint64_t, 2> draw_words(std::uint64_t seed, std::uint64_t index,
                                        Purpose purpose);

/// Two independent uniforms in [0, 1) for (seed, index, purpose).
std::array<double, 2> draw_uniforms(std::uint64_t seed, std::uint64_t index,
                                    Purpose purpose);

/// Derive a child seed, e.g. one per setting pair or grid point.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace mpa::rng
