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

#include "percolation/game.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "percolation/errors.hpp"

namespace percolation {

GameSpec::GameSpec(std::size_t dim, std::size_t p1_actions,
                   std::size_t p2_actions, std::vector<LatticePoint> transitions,
                   std::optional<LatticePoint> direction)
    : dim_(dim),
      p1_(p1_actions),
      p2_(p2_actions),
      transitions_(std::move(transitions)),
      direction_(std::move(direction)) {
  if (dim_ == 0) throw ConfigError("game dimension must be positive");
  if (p1_ == 0 || p2_ == 0) {
    throw ConfigError("action sets must be non-empty");
  }
  if (transitions_.size() != p1_ * p2_) {
    throw ConfigError("transition table has " +
                      std::to_string(transitions_.size()) +
                      " entries, expected " + std::to_string(p1_ * p2_));
  }
  for (std::size_t a = 0; a < transitions_.size(); ++a) {
    if (transitions_[a].dim() != dim_) {
      throw ConfigError("transition q(" + std::to_string(a / p2_) + "," +
                        std::to_string(a % p2_) + ") has " +
                        std::to_string(transitions_[a].dim()) +
                        " components, expected " + std::to_string(dim_));
    }
  }
  if (direction_ && direction_->dim() != dim_) {
    throw ConfigError("direction has " + std::to_string(direction_->dim()) +
                      " components, expected " + std::to_string(dim_));
  }
  step_lo_.assign(transitions_.front().coords().begin(),
                  transitions_.front().coords().end());
  step_hi_ = step_lo_;
  for (const auto& q : transitions_) {
    for (std::size_t k = 0; k < dim_; ++k) {
      step_lo_[k] = std::min(step_lo_[k], q[k]);
      step_hi_[k] = std::max(step_hi_[k], q[k]);
    }
  }
}

GameSpec GameSpec::counterexample() {
  std::vector<LatticePoint> q;
  for (Coord i = -1; i <= 1; ++i) {
    for (Coord j = -1; j <= 1; ++j) q.push_back({i, j, 1});
  }
  return GameSpec(3, 3, 3, std::move(q), LatticePoint{0, 0, 1});
}

GameSpec GameSpec::benchmark() {
  std::vector<LatticePoint> q;
  for (Coord i : {-1, 1}) {
    for (Coord j : {-1, 1}) q.push_back({j, i});
  }
  return GameSpec(2, 2, 2, std::move(q));
}

GameSpec GameSpec::uniform_drift(const LatticePoint& step,
                                 std::size_t p1_actions, std::size_t p2_actions,
                                 std::optional<LatticePoint> direction) {
  return GameSpec(step.dim(), p1_actions, p2_actions,
                  std::vector<LatticePoint>(p1_actions * p2_actions, step),
                  std::move(direction));
}

const LatticePoint& GameSpec::transition(std::size_t i, std::size_t j) const {
  if (i >= p1_ || j >= p2_) {
    throw RangeError("action pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ") out of range");
  }
  return transitions_[i * p2_ + j];
}

GameSpec GameSpec::with_direction(std::optional<LatticePoint> direction) const {
  return GameSpec(dim_, p1_, p2_, transitions_, std::move(direction));
}

Coord GameSpec::max_step() const {
  Coord m = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    m = std::max({m, std::abs(step_lo_[k]), std::abs(step_hi_[k])});
  }
  return m;
}

bool validate_orientation(const GameSpec& spec) {
  if (!spec.direction()) throw MissingDirectionError();
  const auto& u = *spec.direction();
  return std::all_of(spec.transitions().begin(), spec.transitions().end(),
                     [&](const LatticePoint& q) { return q.dot(u) > 0; });
}

Coord min_drift(const GameSpec& spec) {
  if (!spec.direction()) throw MissingDirectionError();
  Coord r = std::numeric_limits<Coord>::max();
  for (const auto& q : spec.transitions()) r = std::min(r, q.dot(*spec.direction()));
  return r;
}

Box stage_box(const GameSpec& spec, const Box& first, std::size_t stage) {
  if (stage == 0) throw RangeError("stages are numbered from 1");
  const auto steps = static_cast<Coord>(stage - 1);
  std::vector<Coord> lo(spec.dim()), hi(spec.dim());
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    if (__builtin_mul_overflow(steps, spec.step_lo()[k], &lo[k]) ||
        __builtin_mul_overflow(steps, spec.step_hi()[k], &hi[k])) {
      throw OverflowError("coordinate overflow at stage " +
                          std::to_string(stage));
    }
  }
  Box b = first.shifted(lo, hi);
  // Keep linear indexes comfortably inside 64 bits.
  constexpr Coord kLimit = Coord{1} << 61;
  for (std::size_t k = 0; k < b.dim(); ++k) {
    if (b.lo()[k] <= -kLimit || b.hi()[k] >= kLimit) {
      throw OverflowError("coordinate range exceeded at stage " +
                          std::to_string(stage));
    }
  }
  return b;
}

bool StageLayer::contains(std::span<const Coord> z) const {
  return box.contains(z) && reachable[box.index(z)] != 0;
}

std::vector<LatticePoint> StageLayer::points() const {
  std::vector<LatticePoint> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < reachable.size(); ++idx) {
    if (reachable[idx]) out.push_back(box.point(idx));
  }
  return out;
}

const StageLayer& StageCone::stage(std::size_t m) const {
  if (m == 0 || m > stages_.size()) {
    throw RangeError("stage " + std::to_string(m) + " outside [1.." +
                     std::to_string(stages_.size()) + "]");
  }
  return stages_[m - 1];
}

std::size_t StageCone::total_states() const {
  std::size_t total = 0;
  for (const auto& s : stages_) total += s.count;
  return total;
}

StageCone reachable_cone(const GameSpec& spec, const LatticePoint& origin,
                         std::size_t n) {
  return reachable_cone(spec, std::span<const LatticePoint>(&origin, 1), n);
}

StageCone reachable_cone(const GameSpec& spec,
                         std::span<const LatticePoint> origins, std::size_t n) {
  if (n == 0) throw RangeError("horizon must be at least 1");
  if (origins.empty()) throw ConfigError("empty set of initial states");
  for (const auto& o : origins) {
    if (o.dim() != spec.dim()) {
      throw ConfigError("initial state " + o.to_string() +
                        " does not match game dimension " +
                        std::to_string(spec.dim()));
    }
  }
  const Box first = Box::hull(origins);
  std::vector<StageLayer> stages;
  stages.reserve(n);

  StageLayer layer{first, std::vector<std::uint8_t>(first.volume(), 0), 0};
  for (const auto& o : origins) {
    auto& cell = layer.reachable[first.index(o.coords())];
    if (!cell) {
      cell = 1;
      ++layer.count;
    }
  }
  stages.push_back(std::move(layer));

  for (std::size_t m = 2; m <= n; ++m) {
    const StageLayer& prev = stages.back();
    StageLayer next{stage_box(spec, first, m), {}, 0};
    next.reachable.assign(next.box.volume(), 0);
    const auto strides = next.box.strides();
    std::vector<std::ptrdiff_t> offsets;
    for (const auto& q : spec.transitions()) {
      std::ptrdiff_t off = 0;
      for (std::size_t k = 0; k < spec.dim(); ++k) {
        off += static_cast<std::ptrdiff_t>(q[k]) *
               static_cast<std::ptrdiff_t>(strides[k]);
      }
      offsets.push_back(off);
    }
    for_each_point(prev.box, [&](std::span<const Coord> z, std::size_t idx) {
      if (!prev.reachable[idx]) return;
      const auto base = next.box.signed_index(z);
      for (auto off : offsets) {
        auto& cell = next.reachable[static_cast<std::size_t>(base + off)];
        if (!cell) {
          cell = 1;
          ++next.count;
        }
      }
    });
    stages.push_back(std::move(next));
  }
  return StageCone({origins.begin(), origins.end()}, std::move(stages));
}

}  // namespace percolation
