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

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "percolation/environment.hpp"
#include "percolation/errors.hpp"
#include "percolation/game.hpp"
#include "percolation/prf.hpp"

namespace percolation {
namespace {

Squares plants_only(std::vector<PlantedSquare> plants, int k_max = 6) {
  Squares s;
  s.k_max = k_max;
  s.random_draws = false;
  s.plants = std::move(plants);
  return s;
}

double binomial_sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

TEST(Prf, DrawsArePureFunctions) {
  const Coord z[3] = {4, -7, 19};
  const auto a = prf::draw(99, prf::Stream::kSquareOne, 3, z);
  EXPECT_EQ(a, prf::draw(99, prf::Stream::kSquareOne, 3, z));
  EXPECT_NE(a, prf::draw(99, prf::Stream::kSquareZero, 3, z));
  EXPECT_NE(a, prf::draw(99, prf::Stream::kSquareOne, 4, z));
  EXPECT_NE(a, prf::draw(100, prf::Stream::kSquareOne, 3, z));
  EXPECT_NE(prf::derive_seed(1, 0), prf::derive_seed(1, 1));
}

TEST(Prf, BernoulliThresholds) {
  EXPECT_FALSE(prf::bernoulli(0, 0.0));
  EXPECT_TRUE(prf::bernoulli(~std::uint64_t{0}, 1.0));
  EXPECT_TRUE(prf::bernoulli(0, 0.5));
  EXPECT_FALSE(prf::bernoulli(std::uint64_t{1} << 63, 0.5));
  EXPECT_TRUE(prf::bernoulli_pow2(0, 6));
  EXPECT_FALSE(prf::bernoulli_pow2(std::uint64_t{1} << 58, 6));
  EXPECT_TRUE(prf::bernoulli_pow2(std::uint64_t{1} << 57, 6));
}

TEST(Model, Validation) {
  EXPECT_THROW(validate_model(IidBernoulli{1.5}), Error);
  EXPECT_THROW(validate_model(IidTable{{PayoffMatrix{1, 1, {0}}}, {0.5}}), Error);
  EXPECT_NO_THROW(validate_model(IidTable{{PayoffMatrix{1, 1, {0}}}, {1.0}}));
  EXPECT_THROW(validate_model(Squares{0, true, {}}), Error);
  const GameSpec flat(2, 1, 1, {{1, 0}});
  EXPECT_THROW(validate_model(Squares{}, flat), ModelError);
  const GameSpec g = GameSpec::counterexample();
  EXPECT_THROW(validate_model(IidTable{{PayoffMatrix{2, 2, {0, 0, 0, 0}}}, {1.0}}, g),
               Error);
}

TEST(Payoff, ConstantBernoulli) {
  const Environment one(IidBernoulli{1.0}, 3);
  const Environment zero(IidBernoulli{0.0}, 3);
  for (Coord x = -3; x <= 3; ++x) {
    EXPECT_EQ(one.payoff(LatticePoint{x, 2 * x}, 1, 0), 1.0);
    EXPECT_EQ(zero.payoff(LatticePoint{x, 2 * x}, 0, 1), 0.0);
  }
  EXPECT_EQ(field_stats(zero, Box({0, 0, 0}, {9, 9, 9})).mean, 0.0);
  EXPECT_EQ(one.sup_norm(), 1.0);
}

TEST(Payoff, TableSupNormAndShape) {
  const IidTable t{{PayoffMatrix{2, 2, {3, 0, 2, 1}}, PayoffMatrix{2, 2, {-5, 0, 0, 0}}},
                   {0.5, 0.5}};
  const Environment env(t, 8);
  EXPECT_EQ(env.sup_norm(), 5.0);
  EXPECT_FALSE(env.state_only());
  std::vector<double> out(4);
  const Coord z[1] = {2};
  env.fill_payoffs(z, out);
  for (std::size_t a = 0; a < 4; ++a) EXPECT_EQ(out[a], env.payoff(z, a / 2, a % 2));
}

TEST(Payoff, TableFrequenciesFollowProbs) {
  const IidTable t{{PayoffMatrix{1, 1, {0}}, PayoffMatrix{1, 1, {1}}, PayoffMatrix{1, 1, {2}}},
                   {0.25, 0.25, 0.5}};
  const Environment env(t, 21);
  double counts[3] = {0, 0, 0};
  const Coord n = 40000;
  for (Coord x = 0; x < n; ++x) counts[static_cast<int>(env.payoff(LatticePoint{x}, 0, 0))] += 1;
  const double p[3] = {0.25, 0.25, 0.5};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(counts[k] / n, p[k], 3 * binomial_sigma(p[k], n));
  }
}

TEST(Payoff, BernoulliFieldMeanOverBox) {
  const double p = 0.3;
  const Box box({0, 0, 0}, {49, 49, 49});
  const double tol = 4 * binomial_sigma(p, static_cast<double>(box.volume()));
  int inside = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const Environment env(IidBernoulli{p}, prf::derive_seed(77, s));
    inside += std::abs(field_stats(env, box).mean - p) <= tol;
  }
  EXPECT_GE(inside, 19);  // at least 95%
}

TEST(Squares, PlantedPayoffRules) {
  const LatticePoint z{0, 0, 0};
  const PlantedSquare one3{SquareKind::kOne, 3, {0, 2, -1}};
  const PlantedSquare zero4{SquareKind::kZero, 4, {5, 0, 3}};
  const PlantedSquare zero3{SquareKind::kZero, 3, {-2, 0, 1}};
  EXPECT_EQ(Environment(plants_only({one3}), 1).payoff(z, 0, 0), 1.0);
  EXPECT_EQ(Environment(plants_only({one3, zero4}), 1).payoff(z, 0, 0), 0.0);
  EXPECT_EQ(Environment(plants_only({one3, zero3}), 1).payoff(z, 0, 0), 1.0);
}

TEST(Squares, ScalesOfPlants) {
  const Environment empty(plants_only({}), 1);
  const LatticePoint z{0, 0, 0};
  EXPECT_EQ(empty.square_scales(z), ScalePair{});
  EXPECT_EQ(empty.payoff(z, 0, 0), 0.0);
  const Environment two(plants_only({{SquareKind::kOne, 2, {0, 1, -2}}}), 1);
  EXPECT_EQ(two.square_scales(z), (ScalePair{2, std::nullopt}));
  // Just outside the square: |y - 1| = 3 > T_2 / 2.
  EXPECT_EQ(two.square_scales(LatticePoint{0, 4, 0}), ScalePair{});
  EXPECT_THROW(two.square_scales(LatticePoint{0, 0}), ModelError);
}

TEST(Squares, CoverageGeometry) {
  const Center c{3, -1, 5};
  int count = 0;
  for_each_point(Box({-10, -10, -10}, {15, 15, 15}),
                 [&](std::span<const Coord> z, std::size_t) {
                   if (square_covers(SquareKind::kOne, 2, c, z)) {
                     ++count;
                     EXPECT_EQ(z[0], 3);
                     EXPECT_LE(std::abs(z[1] + 1), 2);
                     EXPECT_LE(std::abs(z[2] - 5), 2);
                   }
                   if (square_covers(SquareKind::kZero, 2, c, z)) {
                     EXPECT_EQ(z[1], -1);
                   }
                 });
  EXPECT_EQ(count, 25);  // (T_2 + 1)^2
}

// Covering scales recomputed from scratch: every center whose square could
// reach z is drawn again by the test oracle.
ScalePair rescan(const Squares& model, std::uint64_t seed, std::span<const Coord> z) {
  ScalePair out;
  const Box point(std::vector<Coord>(z.begin(), z.end()),
                  std::vector<Coord>(z.begin(), z.end()));
  for (SquareKind kind : {SquareKind::kOne, SquareKind::kZero}) {
    for (int k = 1; k <= model.k_max; ++k) {
      oracle::for_each_candidate(point, kind, k, [&](Coord x, Coord y, Coord h) {
        if (oracle::center_hit(model, seed, kind, k, x, y, h)) {
          auto& slot = kind == SquareKind::kOne ? out.one : out.zero;
          slot = std::max(slot.value_or(0), k);
        }
      });
    }
  }
  return out;
}

TEST(Squares, CatalogIsExhaustive) {
  Squares model;
  model.k_max = 4;
  const Box region({-6, -5, 0}, {5, 6, 9});
  for (int s = 0; s < 3; ++s) {
    const std::uint64_t seed = prf::derive_seed(5, s);
    const Environment env(model, seed, region);
    ASSERT_NE(env.catalog(), nullptr);
    for_each_point(region, [&](std::span<const Coord> z, std::size_t) {
      ScalePair from_catalog;
      for (SquareKind kind : {SquareKind::kOne, SquareKind::kZero}) {
        for (int k = 1; k <= 4; ++k) {
          for (const auto& c : env.catalog()->centers(kind, k)) {
            if (square_covers(kind, k, c, z)) {
              auto& slot = kind == SquareKind::kOne ? from_catalog.one : from_catalog.zero;
              slot = std::max(slot.value_or(0), k);
            }
          }
        }
      }
      const ScalePair expected = rescan(model, seed, z);
      ASSERT_EQ(from_catalog, expected);
      ASSERT_EQ(env.square_scales(z), expected);
      ASSERT_EQ(square_scales_direct(model, seed, z), expected);
    });
  }
}

TEST(Squares, CatalogDeterministicAndPlantsOnly) {
  Squares model;
  model.k_max = 5;
  const Box region({-4, -4, -4}, {4, 4, 4});
  EXPECT_EQ(build_catalog(model, 11, region), build_catalog(model, 11, region));

  const Squares plants = plants_only({{SquareKind::kOne, 2, {0, 0, 0}},
                                      {SquareKind::kZero, 3, {1, 2, 3}},
                                      {SquareKind::kOne, 1, {100, 0, 0}}},
                                     5);
  const auto cat = build_catalog(plants, 11, region);
  EXPECT_EQ(cat.total(), 2u);  // the far plant does not meet the region
  EXPECT_EQ(cat.centers(SquareKind::kOne, 2), (std::vector<Center>{{0, 0, 0}}));
  EXPECT_EQ(cat.centers(SquareKind::kZero, 3), (std::vector<Center>{{1, 2, 3}}));
}

TEST(Squares, CatalogBudget) {
  Squares model;
  const Box region({0, 0, 0}, {99, 99, 99});
  try {
    build_catalog(model, 1, region, 1000);
    FAIL() << "expected a budget error";
  } catch (const BudgetError& e) {
    EXPECT_EQ(e.required(), catalog_work(model, region));
    EXPECT_EQ(e.budget(), 1000u);
  }
}

// k_max = 1 on a single point: the dilated window holds (T_1 + 1)^2 = 9
// candidate centers per kind, each present with probability 1/8.
TEST(Squares, CatalogHitCountMean) {
  Squares model;
  model.k_max = 1;
  const Box point({0, 0, 0}, {0, 0, 0});
  const int seeds = 10000;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    sum += build_catalog(model, prf::derive_seed(3, s), point)
               .centers(SquareKind::kOne, 1)
               .size();
  }
  const double mean = 9.0 / 8.0;
  const double sigma = std::sqrt(9.0 * (1.0 / 8.0) * (7.0 / 8.0) / seeds);
  EXPECT_NEAR(sum / seeds, mean, 3 * sigma);
}

TEST(Squares, BernoulliMarginal) {
  const LatticePoint z{2, -3, 7};
  const Box point = Box::around(z);
  for (int k = 1; k <= 3; ++k) {
    Squares model;
    model.k_max = k;
    const int seeds = 40000;
    double hits = 0;
    for (int s = 0; s < seeds; ++s) {
      const auto cat = build_catalog(model, prf::derive_seed(17, s), point);
      const auto& c = cat.centers(SquareKind::kOne, k);
      hits += std::binary_search(c.begin(), c.end(), Center{2, -3, 7});
    }
    const double p = std::ldexp(1.0, -3 * k);
    EXPECT_NEAR(hits / seeds, p, 3 * binomial_sigma(p, seeds)) << "scale " << k;
  }
}

TEST(Squares, PhaseProcedureEquivalenceSmall) {
  Squares model;
  model.k_max = 4;
  const Box box({-16, -16, -16}, {16, 16, 16});
  for (int s = 0; s < 3; ++s) {
    const std::uint64_t seed = prf::derive_seed(123, s);
    const auto expected = oracle::phase_field(model, seed, box);
    const Environment env(model, seed, box);
    for_each_point(box, [&](std::span<const Coord> z, std::size_t idx) {
      ASSERT_EQ(env.state_payoff(z), expected[idx]);
    });
  }
}

TEST(Squares, RegionAndDirectEvaluationAgree) {
  Squares model;
  model.k_max = 6;
  const Box box({-8, -8, 0}, {8, 8, 8});
  const Environment lazy(model, 42);
  const Environment cached(model, 42, box);
  for_each_point(box, [&](std::span<const Coord> z, std::size_t) {
    ASSERT_EQ(lazy.state_payoff(z), cached.state_payoff(z));
  });
  // A point outside the cached region falls back to direct draws.
  const Coord far[3] = {100, 0, 0};
  EXPECT_EQ(lazy.state_payoff(far), cached.state_payoff(far));
}

TEST(Squares, FieldStatsOfSinglePlant) {
  for (int k = 1; k <= 3; ++k) {
    const Environment env(plants_only({{SquareKind::kOne, k, {0, 0, 0}}}), 9);
    const Box region({-10, -10, -10}, {10, 10, 10});
    const auto side = static_cast<double>(square_side(k) + 1);
    EXPECT_EQ(field_stats(env, region).mean,
              side * side / static_cast<double>(region.volume()));
  }
  EXPECT_THROW(field_stats(Environment(IidBernoulli{0.5}, 1), Box({1}, {0})), RangeError);
}

TEST(CompleteSquares, PlantedExamples) {
  const PlantedSquare one{SquareKind::kOne, 3, {1, 0, -1}};
  const auto found = [](const Squares& m) {
    return find_complete_squares(Environment(m, 4), SquareKind::kOne, 3, 2);
  };
  EXPECT_EQ(found(plants_only({one})), std::vector<LatticePoint>{one.center});
  EXPECT_TRUE(found(plants_only({one, {SquareKind::kZero, 4, {1, 0, 0}}})).empty());
  EXPECT_EQ(found(plants_only({one, {SquareKind::kZero, 3, {1, 0, 0}}})),
            std::vector<LatticePoint>{one.center});
  // Outside the search radius.
  EXPECT_TRUE(find_complete_squares(Environment(plants_only({one}), 4),
                                    SquareKind::kOne, 3, 1)
                  .empty());
  EXPECT_THROW(find_complete_squares(Environment(plants_only({one}), 4),
                                     SquareKind::kOne, 7, 2),
               RangeError);
}

TEST(CompleteSquares, ZeroSquare) {
  const PlantedSquare zero{SquareKind::kZero, 2, {0, 1, 0}};
  const Environment env(plants_only({zero}), 4);
  EXPECT_EQ(find_complete_squares(env, SquareKind::kZero, 2, 1),
            std::vector<LatticePoint>{zero.center});
  const Environment broken(plants_only({zero, {SquareKind::kOne, 2, {0, 0, 0}}}), 4);
  EXPECT_TRUE(find_complete_squares(broken, SquareKind::kZero, 2, 1).empty());
}

}  // namespace
}  // namespace percolation
