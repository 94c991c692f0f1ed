#pragma once

#include <cstdint>
#include <random>

namespace eigengeo {

// Every Monte-Carlo replication draws from its own generator keyed by
// (seed, stream, index). Serial and threaded runs therefore consume exactly
// the same numbers, and adding a grid point never shifts another's draws.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t index = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Derives the 64-bit generator seed for a key. Pure function of the key.
std::uint64_t derive_seed(const StreamKey& key) noexcept;

using Rng = std::mt19937_64;

inline Rng make_rng(const StreamKey& key) { return Rng(derive_seed(key)); }

// Stable stream identifiers for the experiments. Values are part of the
// reproducibility contract; do not renumber.
namespace streams {
inline constexpr std::uint64_t kBias = 0xB1A5;
inline constexpr std::uint64_t kFigure3 = 0xF3;
inline constexpr std::uint64_t kFigure4 = 0xF4;
inline constexpr std::uint64_t kFigure5 = 0xF5;
inline constexpr std::uint64_t kFigure6 = 0xF6;
inline constexpr std::uint64_t kCalibration = 0xCA1;
inline constexpr std::uint64_t kHaar = 0x4AA2;
inline constexpr std::uint64_t kRisk = 0x215C;
inline constexpr std::uint64_t kSize = 0x512E;
}  // namespace streams

}  // namespace eigengeo
