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

#ifndef PERCOLATION_SOLVER_HPP_
#define PERCOLATION_SOLVER_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "percolation/environment.hpp"
#include "percolation/errors.hpp"
#include "percolation/game.hpp"
#include "percolation/lattice.hpp"

namespace percolation {

struct SolveOptions {
  // Upper bound on the number of box states held in memory at once.
  std::uint64_t state_budget = std::uint64_t{1} << 27;
};

// Anything that can evaluate g(z, i, j) for the solver.
template <class S>
concept PayoffSource = requires(const S& s, std::span<const Coord> z,
                                std::span<double> out) {
  { s.state_only() } -> std::convertible_to<bool>;
  { s.state_payoff(z) } -> std::convertible_to<double>;
  s.fill_payoffs(z, out);
};

// Payoffs of `inner`, forced to zero on the hyperplane {z : z.u = level}.
template <PayoffSource S>
class ZeroedOnHyperplane {
 public:
  ZeroedOnHyperplane(const S& inner, LatticePoint direction, Coord level)
      : inner_(inner), direction_(std::move(direction)), level_(level) {}

  bool state_only() const { return inner_.state_only(); }
  double state_payoff(std::span<const Coord> z) const {
    return on_plane(z) ? 0.0 : inner_.state_payoff(z);
  }
  void fill_payoffs(std::span<const Coord> z, std::span<double> out) const {
    if (on_plane(z)) {
      std::fill(out.begin(), out.end(), 0.0);
    } else {
      inner_.fill_payoffs(z, out);
    }
  }

 private:
  bool on_plane(std::span<const Coord> z) const {
    return dot(z, direction_.coords()) == level_;
  }

  const S& inner_;
  LatticePoint direction_;
  Coord level_;
};

namespace detail {

std::vector<std::ptrdiff_t> transition_offsets(const GameSpec& spec,
                                               const Box& next);
void check_layer_budget(const GameSpec& spec, const Box& first, std::size_t n,
                        const SolveOptions& options);

}  // namespace detail

// Backward induction over the box layers B_m = stage_box(spec, first, m).
// Every point of B_m has its successors in B_{m+1}, so the recursion
//
//   V_0 = 0,  V_r(z) = max_i min_j [ g(z,i,j) + V_{r-1}(z + q(i,j)) ]
//
// is exact on the whole box, reachable or not. `visit(m, box, values)` is
// called for m = n+1 (all zeros) down to 1, where values holds
// V_{n-m+1} indexed by box. Only two layers are alive at a time.
template <PayoffSource S, class Visit>
void backward_induction(const S& source, const GameSpec& spec, const Box& first,
                        std::size_t n, const SolveOptions& options,
                        Visit&& visit) {
  if (n == 0) throw RangeError("horizon must be at least 1");
  detail::check_layer_budget(spec, first, n, options);
  const std::size_t d = spec.dim();
  const std::size_t p1 = spec.num_actions_p1();
  const std::size_t p2 = spec.num_actions_p2();
  const bool state_only = source.state_only();

  Box next_box = stage_box(spec, first, n + 1);
  std::vector<double> next(next_box.volume(), 0.0);
  std::vector<double> cur;
  std::vector<double> pay(p1 * p2);
  std::vector<Coord> z(d);
  visit(n + 1, std::as_const(next_box), std::span<const double>(next));

  for (std::size_t m = n; m >= 1; --m) {
    const Box box = stage_box(spec, first, m);
    const auto offsets = detail::transition_offsets(spec, next_box);
    cur.assign(box.volume(), 0.0);
    std::copy(box.lo().begin(), box.lo().end(), z.begin());
    const Coord row_len = box.extent(d - 1);
    const std::size_t rows = cur.size() / static_cast<std::size_t>(row_len);
    std::size_t idx = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      z[d - 1] = box.lo()[d - 1];
      std::ptrdiff_t base = next_box.signed_index(z);
      for (Coord t = 0; t < row_len; ++t, ++idx, ++base, ++z[d - 1]) {
        const double* succ = next.data() + base;
        double best = -std::numeric_limits<double>::infinity();
        if (state_only) {
          for (std::size_t i = 0; i < p1; ++i) {
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < p2; ++j) {
              worst = std::min(worst, succ[offsets[i * p2 + j]]);
            }
            best = std::max(best, worst);
          }
          cur[idx] = source.state_payoff(z) + best;
        } else {
          source.fill_payoffs(z, pay);
          for (std::size_t i = 0; i < p1; ++i) {
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < p2; ++j) {
              const std::size_t a = i * p2 + j;
              worst = std::min(worst, pay[a] + succ[offsets[a]]);
            }
            best = std::max(best, worst);
          }
          cur[idx] = best;
        }
      }
      // Advance the odometer over the leading coordinates.
      for (std::size_t k = d - 1; k-- > 0;) {
        if (z[k] < box.hi()[k]) {
          ++z[k];
          break;
        }
        z[k] = box.lo()[k];
      }
    }
    visit(m, box, std::span<const double>(cur));
    std::swap(cur, next);
    next_box = box;
  }
}

// v_n(origin), keeping only two layers in memory.
template <PayoffSource S>
double solve_value(const S& source, const GameSpec& spec,
                   const LatticePoint& origin, std::size_t n,
                   const SolveOptions& options = {}) {
  if (origin.dim() != spec.dim()) {
    throw ConfigError("origin " + origin.to_string() +
                      " does not match game dimension");
  }
  double total = 0.0;
  backward_induction(source, spec, Box::around(origin), n, options,
                     [&](std::size_t m, const Box&, std::span<const double> v) {
                       if (m == 1) total = v[0];
                     });
  return total / static_cast<double>(n);
}

// Cumulative optimal payoffs of one stage, over the stage's bounding box.
struct StageValues {
  StageLayer layer;
  std::vector<double> cumulative;
};

// Backward-induction result: for stage m in [1..n+1] and every state z
// reachable at stage m, the optimal total payoff V_{n-m+1}(z) of the
// remaining stages.
class ValueTable {
 public:
  ValueTable(std::size_t horizon, LatticePoint origin,
             std::vector<StageValues> stages);

  std::size_t horizon() const { return horizon_; }
  const LatticePoint& origin() const { return origin_; }
  // V_n(origin)
  double total() const;
  // v_n(origin) = V_n(origin) / n
  double value() const { return total() / static_cast<double>(horizon_); }

  const StageValues& stage(std::size_t m) const;
  std::optional<double> cumulative(std::size_t m, const LatticePoint& z) const;
  // Reachable states of stage m with their values, sorted by state.
  std::vector<std::pair<LatticePoint, double>> entries(std::size_t m) const;

 private:
  std::size_t horizon_;
  LatticePoint origin_;
  std::vector<StageValues> stages_;
};

// Exact n-stage value table from `origin`. Throws BudgetError when the cone
// exceeds options.state_budget in total.
ValueTable solve(const Environment& env, const GameSpec& spec,
                 const LatticePoint& origin, std::size_t n,
                 const SolveOptions& options = {});

double solve_value(const Environment& env, const GameSpec& spec,
                   const LatticePoint& origin, std::size_t n,
                   const SolveOptions& options = {});

// v_n(z) for every z in `states`, sharing one sweep.
std::map<LatticePoint, double> value_profile(const Environment& env,
                                             const GameSpec& spec,
                                             std::span<const LatticePoint> states,
                                             std::size_t n,
                                             const SolveOptions& options = {});

// Markov optimal strategies read off a value table. Ties go to the lowest
// action index.
class StrategyProfile {
 public:
  struct Stage {
    StageLayer layer;
    std::vector<std::uint16_t> p1;  // by box index
    std::vector<std::uint16_t> p2;  // by box index * |I| + i
  };

  StrategyProfile(std::size_t p1_actions, std::vector<Stage> stages)
      : p1_actions_(p1_actions), stages_(std::move(stages)) {}

  std::size_t horizon() const { return stages_.size(); }
  std::size_t player1_action(std::size_t m, const LatticePoint& z) const;
  std::size_t player2_reply(std::size_t m, const LatticePoint& z,
                            std::size_t i) const;

 private:
  std::size_t box_index(std::size_t m, const LatticePoint& z) const;

  std::size_t p1_actions_;
  std::vector<Stage> stages_;
};

StrategyProfile extract_strategy(const ValueTable& table,
                                 const Environment& env, const GameSpec& spec);

using Player1Policy =
    std::function<std::size_t(std::size_t stage, const LatticePoint& z)>;
using Player2Policy = std::function<std::size_t(
    std::size_t stage, const LatticePoint& z, std::size_t i)>;

Player1Policy player1_policy(const StrategyProfile& profile);
Player2Policy player2_policy(const StrategyProfile& profile);

struct Trajectory {
  std::vector<LatticePoint> states;  // z_1 .. z_{n+1}
  std::vector<std::size_t> p1_actions;
  std::vector<std::size_t> p2_actions;
  std::vector<double> payoffs;
  double total = 0.0;  // summed from the last stage backwards
  double average = 0.0;
};

Trajectory simulate(const Environment& env, const GameSpec& spec,
                    const LatticePoint& origin, std::size_t n,
                    const Player1Policy& p1, const Player2Policy& p2);

struct BruteForceResult {
  double maxmin = 0.0;
  double minmax = 0.0;
};

// Enumerates pure history-dependent strategies (reduced to the histories a
// strategy can actually reach) and plays every pairing forward. Refuses with
// RangeError unless n <= 3, |I|, |J| <= 3 and the enumeration stays small.
BruteForceResult brute_force(const Environment& env, const GameSpec& spec,
                             const LatticePoint& origin, std::size_t n);

// maxmin of brute_force; throws Error if it differs from the minmax.
double brute_force_value(const Environment& env, const GameSpec& spec,
                         const LatticePoint& origin, std::size_t n);

// Value of the game whose payoffs are zeroed on {z : z.u = level}. Requires
// an oriented spec.
double hyperplane_zeroed_value(const Environment& env, const GameSpec& spec,
                               const LatticePoint& origin, std::size_t n,
                               Coord level, const SolveOptions& options = {});

}  // namespace percolation

#endif  // PERCOLATION_SOLVER_HPP_
