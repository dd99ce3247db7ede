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

#ifndef PERCOLATION_GAME_HPP_
#define PERCOLATION_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "percolation/lattice.hpp"

namespace percolation {

// Action sets, transition function q and an optional declared orientation
// vector u. Actions are dense indexes 0..|I|-1 and 0..|J|-1.
class GameSpec {
 public:
  // `transitions` holds q(i, j) at position i * p2_actions + j.
  GameSpec(std::size_t dim, std::size_t p1_actions, std::size_t p2_actions,
           std::vector<LatticePoint> transitions,
           std::optional<LatticePoint> direction = std::nullopt);

  // Z^3 game with I = J = {-1, 0, 1} and q(i, j) = (i, j, 1), direction
  // (0, 0, 1). Action index a stands for the move a - 1.
  static GameSpec counterexample();

  // Z^2 game, not oriented: Player 1 moves down/up (index 0/1), Player 2
  // moves left/right, both at every stage.
  static GameSpec benchmark();

  // Every action pair moves by the same `step`.
  static GameSpec uniform_drift(const LatticePoint& step, std::size_t p1_actions,
                                std::size_t p2_actions,
                                std::optional<LatticePoint> direction =
                                    std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t num_actions_p1() const { return p1_; }
  std::size_t num_actions_p2() const { return p2_; }
  std::size_t num_action_pairs() const { return p1_ * p2_; }

  const LatticePoint& transition(std::size_t i, std::size_t j) const;
  std::span<const LatticePoint> transitions() const { return transitions_; }
  const std::optional<LatticePoint>& direction() const { return direction_; }

  GameSpec with_direction(std::optional<LatticePoint> direction) const;

  // Componentwise min / max of q over all action pairs.
  std::span<const Coord> step_lo() const { return step_lo_; }
  std::span<const Coord> step_hi() const { return step_hi_; }
  // max |q(i,j)_k|
  Coord max_step() const;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;

 private:
  std::size_t dim_;
  std::size_t p1_;
  std::size_t p2_;
  std::vector<LatticePoint> transitions_;
  std::optional<LatticePoint> direction_;
  std::vector<Coord> step_lo_;
  std::vector<Coord> step_hi_;
};

// True iff q(i,j).u > 0 for every action pair. Throws MissingDirectionError
// when the spec has no direction.
bool validate_orientation(const GameSpec& spec);

// min over action pairs of q(i,j).u. Requires a declared direction.
Coord min_drift(const GameSpec& spec);

// Box containing every state reachable at `stage` (1-based) when stage 1 is
// contained in `first`: first + (stage - 1) * [step_lo, step_hi].
Box stage_box(const GameSpec& spec, const Box& first, std::size_t stage);

// Reachable states of one stage, stored as a membership mask over the
// stage's bounding box.
struct StageLayer {
  Box box;
  std::vector<std::uint8_t> reachable;
  std::size_t count = 0;

  bool contains(std::span<const Coord> z) const;
  bool contains(const LatticePoint& z) const { return contains(z.coords()); }
  // Sorted lexicographically.
  std::vector<LatticePoint> points() const;
};

// Per-stage reachable sets. Stage numbers are 1-based: stage(1) is the set
// of initial states.
class StageCone {
 public:
  StageCone(std::vector<LatticePoint> origins, std::vector<StageLayer> stages)
      : origins_(std::move(origins)), stages_(std::move(stages)) {}

  std::span<const LatticePoint> origins() const { return origins_; }
  std::size_t num_stages() const { return stages_.size(); }
  const StageLayer& stage(std::size_t m) const;
  std::size_t total_states() const;

 private:
  std::vector<LatticePoint> origins_;
  std::vector<StageLayer> stages_;
};

// Enumerates stages 1..n reachable from `origin`.
StageCone reachable_cone(const GameSpec& spec, const LatticePoint& origin,
                         std::size_t n);
// Same, with stage 1 equal to the given set of states.
StageCone reachable_cone(const GameSpec& spec,
                         std::span<const LatticePoint> origins, std::size_t n);

}  // namespace percolation

#endif  // PERCOLATION_GAME_HPP_
