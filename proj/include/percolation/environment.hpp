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

#ifndef PERCOLATION_ENVIRONMENT_HPP_
#define PERCOLATION_ENVIRONMENT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "percolation/lattice.hpp"

namespace percolation {

class GameSpec;

// Row-major |I| x |J| payoff matrix.
struct PayoffMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

// Payoff at z is one Bernoulli(p) value shared by all action pairs.
struct IidBernoulli {
  double p = 0.5;
  friend bool operator==(const IidBernoulli&, const IidBernoulli&) = default;
};

// Per state, one matrix drawn i.i.d. from `support` with weights `probs`.
struct IidTable {
  std::vector<PayoffMatrix> support;
  std::vector<double> probs;
  friend bool operator==(const IidTable&, const IidTable&) = default;
};

enum class SquareKind : std::uint8_t { kZero = 0, kOne = 1 };

struct PlantedSquare {
  SquareKind kind = SquareKind::kOne;
  int scale = 1;
  LatticePoint center;
  friend bool operator==(const PlantedSquare&, const PlantedSquare&) = default;
};

// Two-phase field on Z^3 built from 1-squares (normal (1,0,0)) and 0-squares
// (normal (0,1,0)) of side T_k = 2^k, k = 1..k_max, whose centers are
// independent Bernoulli(T_k^-3) draws. A square of scale k centered at c
// covers the (T_k + 1)^2 points at Chebyshev distance <= T_k / 2 from c in
// its plane.
struct Squares {
  int k_max = 10;
  bool random_draws = true;
  std::vector<PlantedSquare> plants;
  friend bool operator==(const Squares&, const Squares&) = default;
};

using EnvironmentModel = std::variant<IidBernoulli, IidTable, Squares>;

inline constexpr int kMaxSquareScale = 20;
inline constexpr std::uint64_t kDefaultCatalogBudget = 4'000'000'000ULL;

constexpr Coord square_side(int scale) { return Coord{1} << scale; }

// Throws ConfigError / ModelError when the model is malformed or does not fit
// the game (table shape, Squares requires dim 3).
void validate_model(const EnvironmentModel& model);
void validate_model(const EnvironmentModel& model, const GameSpec& spec);

using Center = std::array<Coord, 3>;

bool square_covers(SquareKind kind, int scale, const Center& center,
                   std::span<const Coord> z);

// Centers of every square (drawn or planted) meeting a region, per kind and
// scale, each list sorted lexicographically.
class SquareCatalog {
 public:
  SquareCatalog(Box region, int k_max);

  const Box& region() const { return region_; }
  int k_max() const { return k_max_; }
  const std::vector<Center>& centers(SquareKind kind, int scale) const;
  std::vector<Center>& mutable_centers(SquareKind kind, int scale);
  std::size_t total() const;

  friend bool operator==(const SquareCatalog&, const SquareCatalog&) = default;

 private:
  Box region_;
  int k_max_;
  std::vector<std::vector<Center>> lists_;  // [kind * k_max + scale - 1]
};

// Scans, for every scale, the region dilated by T_k / 2 in-plane (exactly in
// the normal coordinate) and records Bernoulli hits and plants. Throws
// BudgetError if the number of candidate centers exceeds `work_budget`.
SquareCatalog build_catalog(const Squares& model, std::uint64_t seed,
                            const Box& region,
                            std::uint64_t work_budget = kDefaultCatalogBudget);

// Number of candidate centers build_catalog would scan.
std::uint64_t catalog_work(const Squares& model, const Box& region);

struct ScalePair {
  std::optional<int> one;   // largest scale of a covering 1-square
  std::optional<int> zero;  // largest scale of a covering 0-square
  friend bool operator==(const ScalePair&, const ScalePair&) = default;
};

// Closed form of the two phases: payoff 1 iff a 1-square covers z and no
// 0-square of strictly larger scale does.
constexpr double squares_payoff(const ScalePair& s) {
  return s.one && (!s.zero || *s.one >= *s.zero) ? 1.0 : 0.0;
}

// Per-point evaluation by direct draws over every candidate center. Exact
// but costs sum_k (T_k + 1)^2 draws per kind.
ScalePair square_scales_direct(const Squares& model, std::uint64_t seed,
                               std::span<const Coord> z);

// Seeded random payoff field g(z, i, j). Immutable; all queries are pure.
class Environment {
 public:
  // For the Squares model, a region enables a precomputed catalog and a
  // dense raster of covering scales; points outside it are evaluated on
  // demand.
  Environment(EnvironmentModel model, std::uint64_t seed,
              std::optional<Box> region = std::nullopt,
              std::uint64_t catalog_budget = kDefaultCatalogBudget);

  const EnvironmentModel& model() const { return model_; }
  std::uint64_t seed() const { return seed_; }
  const std::optional<Box>& region() const { return region_; }
  const SquareCatalog* catalog() const {
    return catalog_ ? &*catalog_ : nullptr;
  }

  Environment with_region(const Box& region) const;

  // True when the payoff does not depend on the action pair.
  bool state_only() const;
  double state_payoff(std::span<const Coord> z) const;
  double payoff(std::span<const Coord> z, std::size_t i, std::size_t j) const;
  double payoff(const LatticePoint& z, std::size_t i, std::size_t j) const {
    return payoff(z.coords(), i, j);
  }

  // Writes g(z, i, j) at out[i * cols + j] for an |I| x |J| game where
  // out.size() == |I| * |J|.
  void fill_payoffs(std::span<const Coord> z, std::span<double> out) const;

  // sup |g|
  double sup_norm() const;

  ScalePair square_scales(std::span<const Coord> z) const;
  ScalePair square_scales(const LatticePoint& z) const {
    return square_scales(z.coords());
  }

 private:
  const Squares& squares() const;
  std::size_t table_index(std::span<const Coord> z) const;

  EnvironmentModel model_;
  std::uint64_t seed_;
  std::optional<Box> region_;
  std::uint64_t catalog_budget_;
  std::optional<SquareCatalog> catalog_;
  // Largest covering scale per region point, 0 when uncovered.
  std::vector<std::int8_t> max_one_;
  std::vector<std::int8_t> max_zero_;
  std::vector<double> cumulative_;  // IidTable
};

// Centers of complete squares of the given kind and scale whose center lies
// within 1-norm distance `radius` of the origin. Completeness is verified by
// evaluating the payoff at every point of the square.
std::vector<LatticePoint> find_complete_squares(const Environment& env,
                                                SquareKind kind, int scale,
                                                Coord radius);

struct FieldStats {
  double mean = 0.0;
  std::size_t count = 0;
};

FieldStats field_stats(const Environment& env, const Box& region,
                       std::size_t i = 0, std::size_t j = 0);

}  // namespace percolation

#endif  // PERCOLATION_ENVIRONMENT_HPP_
