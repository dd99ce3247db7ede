// Copyright 2026 The Percolation Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERCOLATION_PRF_HPP_
#define PERCOLATION_PRF_HPP_

// Counter-based pseudorandom function used for every random draw.
//
// A draw is a pure function of (seed, stream, scale, lattice point):
//
//   h0 = mix64(seed + kGolden * (1 + (stream << 8 | scale)))
//   h  = mix64(h + kCoordMul * c)   folded over the coordinates c of z
//
// where mix64 is the SplitMix64 finaliser (Stafford variant 13). For a fixed
// prefix, c -> h + kCoordMul * c is injective (kCoordMul is odd) and mix64 is
// a bijection, so distinct points on the same line never collide. There is no
// sequential generator state, which makes the random field stationary and the
// draws independent of evaluation order and thread schedule.
//
// These constants are part of the on-disk reproducibility contract; changing
// them changes every experiment output.

#include <cstdint>
#include <span>

#include "percolation/lattice.hpp"

namespace percolation::prf {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kCoordMul = 0xd1b54a32d192ed03ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Stream : std::uint64_t {
  kIid = 1,
  kSquareOne = 2,
  kSquareZero = 3,
  kPlantCenter = 4,
};

constexpr std::uint64_t prefix(std::uint64_t seed, Stream stream,
                               unsigned scale = 0) {
  const std::uint64_t tag =
      (static_cast<std::uint64_t>(stream) << 8) | (scale & 0xffu);
  return mix64(seed + kGolden * (1 + tag));
}

constexpr std::uint64_t fold(std::uint64_t h, Coord c) {
  return mix64(h + kCoordMul * static_cast<std::uint64_t>(c));
}

inline std::uint64_t draw(std::uint64_t seed, Stream stream, unsigned scale,
                          std::span<const Coord> z) {
  std::uint64_t h = prefix(seed, stream, scale);
  for (Coord c : z) h = fold(h, c);
  return h;
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Event of probability exactly 2^-bits.
constexpr bool bernoulli_pow2(std::uint64_t h, unsigned bits) {
  return bits == 0 || (h >> (64 - bits)) == 0;
}

// Event of probability p (exact for dyadic p with at most 64 bits).
bool bernoulli(std::uint64_t h, double p);

// Seed of run `index` derived from an experiment's base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(kGolden * (index + 1)));
}

}  // namespace percolation::prf

#endif  // PERCOLATION_PRF_HPP_
