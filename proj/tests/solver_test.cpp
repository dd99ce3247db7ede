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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "percolation/errors.hpp"
#include "percolation/experiments.hpp"
#include "percolation/prf.hpp"
#include "percolation/solver.hpp"
#include "percolation/value_table_io.hpp"

namespace percolation {
namespace {

IidTable constant_table(std::size_t p1, std::size_t p2, double c) {
  return IidTable{{PayoffMatrix{p1, p2, std::vector<double>(p1 * p2, c)}}, {1.0}};
}

// Payoff 1 exactly on the given 1-d states.
struct StateSet {
  std::vector<Coord> ones;
  bool state_only() const { return true; }
  double state_payoff(std::span<const Coord> z) const {
    return std::find(ones.begin(), ones.end(), z[0]) != ones.end() ? 1.0 : 0.0;
  }
  void fill_payoffs(std::span<const Coord> z, std::span<double> out) const {
    std::fill(out.begin(), out.end(), state_payoff(z));
  }
};

oracle::RecursiveValue::Payoff payoff_of(const Environment& env) {
  return [&env](const LatticePoint& z, std::size_t i, std::size_t j) {
    return env.payoff(z, i, j);
  };
}

TEST(Solve, ConstantPayoff) {
  const GameSpec g = GameSpec::counterexample();
  const Environment env(constant_table(3, 3, 0.75), 1);
  for (std::size_t n : {1, 2, 5, 9}) {
    EXPECT_EQ(solve(env, g, LatticePoint::zero(3), n).value(), 0.75);
    EXPECT_EQ(solve_value(env, g, LatticePoint::zero(3), n), 0.75);
  }
}

TEST(Solve, ForcedTrajectory) {
  const GameSpec drift = GameSpec::uniform_drift({1}, 2, 2);
  EXPECT_EQ(solve_value(StateSet{{1}}, drift, LatticePoint{0}, 2), 0.5);
  EXPECT_EQ(solve_value(StateSet{{0, 2}}, drift, LatticePoint{0}, 3), 2.0 / 3.0);
}

TEST(Solve, SingleStageMatrix) {
  const GameSpec drift = GameSpec::uniform_drift({1}, 2, 2);
  const IidTable t{{PayoffMatrix{2, 2, {3, 0, 2, 1}}}, {1.0}};
  const Environment env(t, 5);
  EXPECT_EQ(solve(env, drift, LatticePoint{0}, 1).value(), 1.0);
  EXPECT_EQ(brute_force_value(env, drift, LatticePoint{0}, 1), 1.0);
}

TEST(Solve, RejectsBadInputs) {
  const GameSpec g = GameSpec::counterexample();
  const Environment env(IidBernoulli{0.5}, 1);
  EXPECT_THROW(solve(env, g, LatticePoint::zero(3), 0), RangeError);
  EXPECT_THROW(solve(env, g, LatticePoint::zero(2), 3), ConfigError);
  try {
    solve(env, g, LatticePoint::zero(3), 40, SolveOptions{1000});
    FAIL() << "expected a budget error";
  } catch (const BudgetError& e) {
    EXPECT_GT(e.required(), 1000u);
  }
}

TEST(Solve, MatchesRecursionOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 80; ++t) {
    const auto inst = oracle::random_instance(rng, 3, 3, 7, -4, 4);
    const Environment env(inst.table, inst.seed);
    oracle::RecursiveValue rec(inst.spec, payoff_of(env));
    const ValueTable table = solve(env, inst.spec, inst.origin, inst.n);
    EXPECT_EQ(table.total(), rec.total(inst.origin, inst.n)) << "trial " << t;
    EXPECT_EQ(table.value(), solve_value(env, inst.spec, inst.origin, inst.n));
    // Every stored state carries the optimal remaining total.
    for (std::size_t m = 1; m <= inst.n + 1; ++m) {
      for (const auto& [z, v] : table.entries(m)) {
        ASSERT_EQ(v, rec.total(z, inst.n - m + 1));
      }
    }
  }
}

TEST(Solve, BellmanConsistency) {
  const GameSpec g = GameSpec::counterexample();
  Squares model;
  model.k_max = 5;
  const std::size_t n = 10;
  const Environment env(model, 31, cone_region(g, LatticePoint::zero(3), n + 1));
  const ValueTable table = solve(env, g, LatticePoint::zero(3), n);
  for (std::size_t m = 1; m <= n; ++m) {
    for (const auto& [z, v] : table.entries(m)) {
      double best = -1e300;
      for (std::size_t i = 0; i < 3; ++i) {
        double worst = 1e300;
        for (std::size_t j = 0; j < 3; ++j) {
          worst = std::min(worst, env.payoff(z, i, j) +
                                      *table.cumulative(m + 1, z + g.transition(i, j)));
        }
        best = std::max(best, worst);
      }
      ASSERT_EQ(v, best);
    }
  }
  for (const auto& [z, v] : table.entries(n + 1)) EXPECT_EQ(v, 0.0);
}

TEST(BruteForce, AgreesWithSolverAndIsSymmetric) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    // Three actions only fit the enumeration cap up to n = 2.
    auto inst = t < 40 ? oracle::random_instance(rng, 2, 2, 3, 0, 1)
                       : oracle::random_instance(rng, 2, 3, 2, 0, 1);
    const Environment env(inst.table, inst.seed);
    const auto bf = brute_force(env, inst.spec, inst.origin, inst.n);
    EXPECT_EQ(bf.maxmin, bf.minmax);
    EXPECT_EQ(bf.maxmin, solve(env, inst.spec, inst.origin, inst.n).value()) << t;
  }
}

TEST(BruteForce, ConstantAndGuard) {
  const GameSpec drift = GameSpec::uniform_drift({1}, 2, 2);
  const Environment env(constant_table(2, 2, 0.25), 3);
  EXPECT_EQ(brute_force_value(env, drift, LatticePoint{0}, 3), 0.25);
  EXPECT_THROW(brute_force(env, drift, LatticePoint{0}, 4), RangeError);
  const GameSpec wide = GameSpec::uniform_drift({1}, 4, 2);
  EXPECT_THROW(brute_force(Environment(constant_table(4, 2, 0), 3), wide,
                           LatticePoint{0}, 1),
               RangeError);
}

TEST(OracleSuite, NoMismatches) {
  const auto r = oracle_suite(60, 11);
  EXPECT_EQ(r.trials, 60u);
  EXPECT_EQ(r.mismatches, 0u);
  EXPECT_EQ(r.asymmetric, 0u);
}

TEST(ValueProfile, SingletonAndConstant) {
  const GameSpec g = GameSpec::counterexample();
  const Environment env(IidBernoulli{0.5}, 12);
  const std::vector<LatticePoint> one{LatticePoint{2, -1, 4}};
  EXPECT_EQ(value_profile(env, g, one, 6).at(one[0]),
            solve_value(env, g, one[0], 6));
  const auto states = reachable_cone(g, LatticePoint::zero(3), 3).stage(3).points();
  const auto profile = value_profile(env, g, states, 5);
  ASSERT_EQ(profile.size(), states.size());
  for (const auto& z : states) EXPECT_EQ(profile.at(z), solve_value(env, g, z, 5));
  const Environment flat(constant_table(3, 3, 2.0), 1);
  for (const auto& [z, v] : value_profile(flat, g, states, 4)) EXPECT_EQ(v, 2.0);
}

// Best response of one player against a fixed Markov policy of the other,
// by a one-player recursion over (stage, state).
double best_reply_total(const Environment& env, const GameSpec& spec,
                        const LatticePoint& z, std::size_t m, std::size_t n,
                        const Player1Policy* p1, const Player2Policy* p2) {
  if (m > n) return 0.0;
  if (p1) {
    const std::size_t i = (*p1)(m, z);
    double worst = 1e300;
    for (std::size_t j = 0; j < spec.num_actions_p2(); ++j) {
      worst = std::min(worst, env.payoff(z, i, j) +
                                  best_reply_total(env, spec, z + spec.transition(i, j),
                                                   m + 1, n, p1, p2));
    }
    return worst;
  }
  double best = -1e300;
  for (std::size_t i = 0; i < spec.num_actions_p1(); ++i) {
    const std::size_t j = (*p2)(m, z, i);
    best = std::max(best, env.payoff(z, i, j) +
                              best_reply_total(env, spec, z + spec.transition(i, j),
                                               m + 1, n, p1, p2));
  }
  return best;
}

TEST(Strategy, SoundnessAgainstEveryReply) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    const auto inst = oracle::random_instance(rng, 2, 3, 5, -2, 3);
    const Environment env(inst.table, inst.seed);
    const ValueTable table = solve(env, inst.spec, inst.origin, inst.n);
    const StrategyProfile profile = extract_strategy(table, env, inst.spec);
    const auto p1 = player1_policy(profile);
    const auto p2 = player2_policy(profile);
    const double v = table.value();
    const auto n = static_cast<double>(inst.n);
    const double guaranteed =
        best_reply_total(env, inst.spec, inst.origin, 1, inst.n, &p1, nullptr) / n;
    const double conceded =
        best_reply_total(env, inst.spec, inst.origin, 1, inst.n, nullptr, &p2) / n;
    EXPECT_GE(guaranteed, v - 1e-12);
    EXPECT_LE(conceded, v + 1e-12);
    const Trajectory tr = simulate(env, inst.spec, inst.origin, inst.n, p1, p2);
    EXPECT_EQ(tr.total, table.total());
    EXPECT_EQ(tr.average, v);
    EXPECT_EQ(tr.states.size(), inst.n + 1);
  }
}

TEST(Strategy, TiesGoToLowestIndex) {
  const GameSpec g = GameSpec::counterexample();
  const Environment env(constant_table(3, 3, 1.0), 1);
  const auto table = solve(env, g, LatticePoint::zero(3), 4);
  const auto profile = extract_strategy(table, env, g);
  for (std::size_t m = 1; m <= 4; ++m) {
    for (const auto& [z, v] : table.entries(m)) {
      EXPECT_EQ(profile.player1_action(m, z), 0u);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(profile.player2_reply(m, z, i), 0u);
    }
  }
  EXPECT_THROW(profile.player1_action(2, LatticePoint{5, 5, 5}), RangeError);
}

// A complete 1-square of side 64 on the plane x = 2: Player 1 walks there in
// two stages and then holds x fixed (move 0, index 1) while Player 2 cannot
// leave the square within the horizon.
TEST(Strategy, PlayerOneReachesAndHoldsTheSquare) {
  const GameSpec g = GameSpec::counterexample();
  Squares model;
  model.random_draws = false;
  model.k_max = 6;
  model.plants = {{SquareKind::kOne, 6, {2, 1, 1}}};
  const std::size_t n = 16;
  const Environment env(model, 1, cone_region(g, LatticePoint::zero(3), n + 1));
  const auto table = solve(env, g, LatticePoint::zero(3), n);
  EXPECT_EQ(table.value(), 14.0 / 16.0);
  const auto profile = extract_strategy(table, env, g);
  const auto tr = simulate(env, g, LatticePoint::zero(3), n, player1_policy(profile),
                           player2_policy(profile));
  EXPECT_EQ(tr.states[2][0], 2);
  for (std::size_t m = 3; m <= n; ++m) {
    EXPECT_EQ(tr.states[m - 1][0], 2) << "stage " << m;
    EXPECT_EQ(tr.payoffs[m - 1], 1.0);
  }
  for (std::size_t m = 3; m < n; ++m) EXPECT_EQ(tr.p1_actions[m - 1], 1u);
  EXPECT_EQ(tr.p1_actions[0], 2u);
  EXPECT_EQ(tr.p1_actions[1], 2u);
}

TEST(Bounds, ValueWithinPayoffRangeAndMonotone) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    auto inst = oracle::random_instance(rng, 3, 3, 8, -3, 3);
    const Environment env(inst.table, inst.seed);
    const double v = solve_value(env, inst.spec, inst.origin, inst.n);
    double lo = 1e300, hi = -1e300;
    const auto cone = reachable_cone(inst.spec, inst.origin, inst.n);
    for (std::size_t m = 1; m <= inst.n; ++m) {
      for (const auto& z : cone.stage(m).points()) {
        for (std::size_t a = 0; a < inst.spec.num_action_pairs(); ++a) {
          const double g = env.payoff(z, a / inst.spec.num_actions_p2(),
                                      a % inst.spec.num_actions_p2());
          lo = std::min(lo, g);
          hi = std::max(hi, g);
        }
      }
    }
    EXPECT_LE(lo, v);
    EXPECT_GE(hi, v);
    IidTable bumped = inst.table;
    for (auto& m : bumped.support) {
      for (auto& e : m.entries) e += static_cast<double>(rng() % 3);
    }
    EXPECT_GE(solve_value(Environment(bumped, inst.seed), inst.spec, inst.origin, inst.n), v);
  }
}

TEST(Hyperplane, OutsideRangeAndConstantField) {
  const GameSpec g = GameSpec::counterexample();
  const Environment one(IidBernoulli{1.0}, 1);
  const std::size_t n = 8;
  for (Coord level = 0; level < static_cast<Coord>(n); ++level) {
    EXPECT_EQ(hyperplane_zeroed_value(one, g, LatticePoint::zero(3), n, level),
              (n - 1.0) / n);
  }
  EXPECT_EQ(hyperplane_zeroed_value(one, g, LatticePoint::zero(3), n, 8), 1.0);
  EXPECT_EQ(hyperplane_zeroed_value(one, g, LatticePoint::zero(3), n, -1), 1.0);
  const Environment half(IidBernoulli{0.5}, 4);
  EXPECT_EQ(hyperplane_zeroed_value(half, g, LatticePoint::zero(3), n, 50),
            solve_value(half, g, LatticePoint::zero(3), n));
  EXPECT_THROW(hyperplane_zeroed_value(one, GameSpec::uniform_drift({1, 0}, 1, 1),
                                       LatticePoint::zero(2), 2, 0),
               OrientationError);
  EXPECT_THROW(hyperplane_zeroed_value(one, GameSpec::benchmark().with_direction(
                                                LatticePoint{1, 0}),
                                       LatticePoint::zero(2), 2, 0),
               OrientationError);
}

TEST(Hyperplane, IncrementBoundOnSquares) {
  const GameSpec g = GameSpec::counterexample();
  Squares model;
  model.k_max = 5;
  for (int s = 0; s < 5; ++s) {
    const std::size_t n = 12;
    const Environment env(model, prf::derive_seed(8, s),
                          cone_region(g, LatticePoint::zero(3), n));
    const double v = solve_value(env, g, LatticePoint::zero(3), n);
    for (Coord level = -1; level <= static_cast<Coord>(n); ++level) {
      const double w = hyperplane_zeroed_value(env, g, LatticePoint::zero(3), n, level);
      EXPECT_LE(std::abs(w - v), 1.0 / n + 1e-12);
      EXPECT_LE(w, v);
    }
  }
}

TEST(ValueTableIo, RoundTrip) {
  const GameSpec g = GameSpec::counterexample();
  const Environment env(IidBernoulli{0.5}, 6);
  const auto table = solve(env, g, LatticePoint{1, -2, 3}, 7);
  std::stringstream buf;
  write_value_table(buf, table);
  const auto back = read_value_table(buf);
  EXPECT_EQ(back.horizon(), 7u);
  EXPECT_EQ(back.origin(), table.origin());
  EXPECT_EQ(back.value(), table.value());
  for (std::size_t m = 1; m <= 8; ++m) EXPECT_EQ(back.entries(m), table.entries(m));
}

TEST(ValueTableIo, RejectsGarbage) {
  std::stringstream bad("not a table");
  EXPECT_THROW(read_value_table(bad), Error);
}

}  // namespace
}  // namespace percolation
