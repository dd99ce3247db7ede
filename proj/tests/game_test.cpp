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

#include <gtest/gtest.h>

#include <set>

#include "percolation/errors.hpp"
#include "percolation/game.hpp"

namespace percolation {
namespace {

// Stage sets computed directly from the definition:
// S_1 = {origin}, S_{m+1} = {z + q(i,j) : z in S_m}.
std::vector<std::set<LatticePoint>> naive_cone(const GameSpec& spec,
                                               const LatticePoint& origin,
                                               std::size_t n) {
  std::vector<std::set<LatticePoint>> out{{origin}};
  while (out.size() < n) {
    std::set<LatticePoint> next;
    for (const auto& z : out.back()) {
      for (const auto& q : spec.transitions()) next.insert(z + q);
    }
    out.push_back(std::move(next));
  }
  return out;
}

TEST(GameSpec, CounterexampleTransitions) {
  const GameSpec g = GameSpec::counterexample();
  EXPECT_EQ(g.dim(), 3u);
  EXPECT_EQ(g.num_actions_p1(), 3u);
  EXPECT_EQ(g.num_actions_p2(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(g.transition(i, j),
                (LatticePoint{static_cast<Coord>(i) - 1, static_cast<Coord>(j) - 1, 1}));
    }
  }
  EXPECT_EQ(*g.direction(), (LatticePoint{0, 0, 1}));
  EXPECT_THROW(g.transition(3, 0), RangeError);
}

TEST(GameSpec, RejectsMalformedTables) {
  EXPECT_THROW(GameSpec(2, 1, 2, {{1, 0}}), Error);
  EXPECT_THROW(GameSpec(2, 1, 1, {{1, 0, 0}}), Error);
  EXPECT_THROW(GameSpec(1, 1, 1, {{1}}, LatticePoint{1, 0}), Error);
}

TEST(Orientation, Examples) {
  EXPECT_TRUE(validate_orientation(GameSpec::counterexample()));
  EXPECT_TRUE(validate_orientation(GameSpec::uniform_drift({1}, 1, 1, LatticePoint{1})));
  for (Coord u0 : {-2, -1, 1, 2}) {
    for (Coord u1 : {-1, 0, 1}) {
      const GameSpec g(2, 2, 1, {{1, 0}, {-1, 0}}, LatticePoint{u0, u1});
      EXPECT_FALSE(validate_orientation(g));
    }
  }
}

TEST(Orientation, MissingDirectionIsADistinctError) {
  const GameSpec g(1, 1, 1, {{1}});
  EXPECT_THROW(validate_orientation(g), MissingDirectionError);
  EXPECT_THROW(min_drift(g), MissingDirectionError);
}

TEST(Orientation, BenchmarkIsNotOriented) {
  const GameSpec g = GameSpec::benchmark();
  for (Coord a = -2; a <= 2; ++a) {
    for (Coord b = -2; b <= 2; ++b) {
      EXPECT_FALSE(validate_orientation(g.with_direction(LatticePoint{a, b})));
    }
  }
}

TEST(ReachableCone, CounterexampleStageTwo) {
  const auto cone = reachable_cone(GameSpec::counterexample(), LatticePoint::zero(3), 2);
  ASSERT_EQ(cone.num_stages(), 2u);
  EXPECT_EQ(cone.stage(1).points(), std::vector<LatticePoint>{LatticePoint::zero(3)});
  std::vector<LatticePoint> expected;
  for (Coord a = -1; a <= 1; ++a)
    for (Coord b = -1; b <= 1; ++b) expected.push_back({a, b, 1});
  EXPECT_EQ(cone.stage(2).points(), expected);
}

TEST(ReachableCone, SingleStageAndDrift) {
  const GameSpec drift = GameSpec::uniform_drift({1}, 2, 2);
  const auto one = reachable_cone(drift, LatticePoint{5}, 1);
  EXPECT_EQ(one.num_stages(), 1u);
  EXPECT_EQ(one.stage(1).points(), std::vector<LatticePoint>{LatticePoint{5}});
  const auto three = reachable_cone(drift, LatticePoint{0}, 3);
  for (std::size_t m = 1; m <= 3; ++m) {
    EXPECT_EQ(three.stage(m).points(),
              std::vector<LatticePoint>{LatticePoint{static_cast<Coord>(m - 1)}});
  }
}

TEST(ReachableCone, CounterexampleStageSizes) {
  const auto cone = reachable_cone(GameSpec::counterexample(), LatticePoint::zero(3), 20);
  std::size_t total = 0;
  for (std::size_t m = 1; m <= 20; ++m) {
    EXPECT_EQ(cone.stage(m).count, (2 * m - 1) * (2 * m - 1));
    total += (2 * m - 1) * (2 * m - 1);
  }
  EXPECT_EQ(cone.total_states(), total);
}

// Property sweep over small random specs: mask propagation equals the
// set-based definition, prefixes do not depend on the horizon, and oriented
// specs satisfy the drift bound.
TEST(ReachableCone, MatchesDefinitionOnRandomSpecs) {
  std::uint64_t state = 12345;
  auto next = [&](Coord lo, Coord hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<Coord>((state >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = static_cast<std::size_t>(next(1, 3));
    const std::size_t p1 = static_cast<std::size_t>(next(1, 3));
    const std::size_t p2 = static_cast<std::size_t>(next(1, 3));
    std::vector<LatticePoint> q;
    for (std::size_t a = 0; a < p1 * p2; ++a) {
      LatticePoint step = LatticePoint::zero(d);
      for (std::size_t k = 0; k < d; ++k) step[k] = next(-2, 2);
      step[0] = next(1, 2);  // oriented along the first axis
      q.push_back(step);
    }
    LatticePoint u = LatticePoint::zero(d);
    u[0] = 1;
    const GameSpec spec(d, p1, p2, q, u);
    LatticePoint origin = LatticePoint::zero(d);
    for (std::size_t k = 0; k < d; ++k) origin[k] = next(-5, 5);
    const std::size_t n = static_cast<std::size_t>(next(1, 6));
    const auto cone = reachable_cone(spec, origin, n);
    const auto naive = naive_cone(spec, origin, n);
    const auto longer = reachable_cone(spec, origin, n + 2);
    const Coord r = min_drift(spec);
    for (std::size_t m = 1; m <= n; ++m) {
      const auto pts = cone.stage(m).points();
      EXPECT_EQ(std::set<LatticePoint>(pts.begin(), pts.end()), naive[m - 1]);
      EXPECT_EQ(longer.stage(m).points(), pts);
      for (const auto& z : pts) {
        EXPECT_GE(z.dot(u), origin.dot(u) + static_cast<Coord>(m - 1) * r);
        EXPECT_TRUE(stage_box(spec, Box::around(origin), m).contains(z));
      }
    }
  }
}

TEST(ReachableCone, CoordinateOverflowIsAnError) {
  const GameSpec g = GameSpec::uniform_drift({Coord{1} << 61}, 1, 1);
  EXPECT_THROW(reachable_cone(g, LatticePoint{0}, 8), OverflowError);
}

}  // namespace
}  // namespace percolation
