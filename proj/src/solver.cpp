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

#include "percolation/solver.hpp"

#include <cmath>

namespace percolation {
namespace detail {

std::vector<std::ptrdiff_t> transition_offsets(const GameSpec& spec,
                                               const Box& next) {
  const auto strides = next.strides();
  std::vector<std::ptrdiff_t> offsets;
  offsets.reserve(spec.num_action_pairs());
  for (const auto& q : spec.transitions()) {
    std::ptrdiff_t off = 0;
    for (std::size_t k = 0; k < spec.dim(); ++k) {
      off += static_cast<std::ptrdiff_t>(q[k]) *
             static_cast<std::ptrdiff_t>(strides[k]);
    }
    offsets.push_back(off);
  }
  return offsets;
}

void check_layer_budget(const GameSpec& spec, const Box& first, std::size_t n,
                        const SolveOptions& options) {
  // Boxes grow monotonically with the stage, so the last two are largest.
  const std::uint64_t required = stage_box(spec, first, n).volume() +
                                 stage_box(spec, first, n + 1).volume();
  if (required > options.state_budget) {
    throw BudgetError("backward induction over " + std::to_string(n) +
                          " stages",
                      required, options.state_budget);
  }
}

}  // namespace detail

namespace {

void check_inputs(const Environment& env, const GameSpec& spec,
                  const LatticePoint& origin) {
  validate_model(env.model(), spec);
  if (origin.dim() != spec.dim()) {
    throw ConfigError("origin " + origin.to_string() +
                      " does not match game dimension " +
                      std::to_string(spec.dim()));
  }
}

}  // namespace

ValueTable::ValueTable(std::size_t horizon, LatticePoint origin,
                       std::vector<StageValues> stages)
    : horizon_(horizon), origin_(std::move(origin)), stages_(std::move(stages)) {
  if (stages_.size() != horizon_ + 1) {
    throw ConfigError("value table needs horizon + 1 stages");
  }
}

double ValueTable::total() const {
  const auto v = cumulative(1, origin_);
  if (!v) throw ConfigError("value table does not contain its origin");
  return *v;
}

const StageValues& ValueTable::stage(std::size_t m) const {
  if (m == 0 || m > stages_.size()) {
    throw RangeError("stage " + std::to_string(m) + " outside [1.." +
                     std::to_string(stages_.size()) + "]");
  }
  return stages_[m - 1];
}

std::optional<double> ValueTable::cumulative(std::size_t m,
                                             const LatticePoint& z) const {
  const auto& s = stage(m);
  if (!s.layer.contains(z)) return std::nullopt;
  return s.cumulative[s.layer.box.index(z.coords())];
}

std::vector<std::pair<LatticePoint, double>> ValueTable::entries(
    std::size_t m) const {
  const auto& s = stage(m);
  std::vector<std::pair<LatticePoint, double>> out;
  out.reserve(s.layer.count);
  for (std::size_t idx = 0; idx < s.cumulative.size(); ++idx) {
    if (s.layer.reachable[idx]) {
      out.emplace_back(s.layer.box.point(idx), s.cumulative[idx]);
    }
  }
  return out;
}

ValueTable solve(const Environment& env, const GameSpec& spec,
                 const LatticePoint& origin, std::size_t n,
                 const SolveOptions& options) {
  check_inputs(env, spec, origin);
  if (n == 0) throw RangeError("horizon must be at least 1");
  const Box first = Box::around(origin);
  std::uint64_t required = 0;
  for (std::size_t m = 1; m <= n + 1; ++m) {
    required += stage_box(spec, first, m).volume();
  }
  if (required > options.state_budget) {
    throw BudgetError("value table for " + std::to_string(n) + " stages",
                      required, options.state_budget);
  }
  StageCone cone = reachable_cone(spec, origin, n + 1);
  std::vector<StageValues> stages(n + 1);
  for (std::size_t m = 1; m <= n + 1; ++m) stages[m - 1].layer = cone.stage(m);
  backward_induction(env, spec, first, n, options,
                     [&](std::size_t m, const Box& box,
                         std::span<const double> v) {
                       auto& s = stages[m - 1];
                       if (!(s.layer.box == box)) {
                         throw Error("internal: cone and sweep boxes differ");
                       }
                       s.cumulative.assign(v.begin(), v.end());
                     });
  return ValueTable(n, origin, std::move(stages));
}

double solve_value(const Environment& env, const GameSpec& spec,
                   const LatticePoint& origin, std::size_t n,
                   const SolveOptions& options) {
  check_inputs(env, spec, origin);
  return solve_value<Environment>(env, spec, origin, n, options);
}

std::map<LatticePoint, double> value_profile(const Environment& env,
                                             const GameSpec& spec,
                                             std::span<const LatticePoint> states,
                                             std::size_t n,
                                             const SolveOptions& options) {
  if (states.empty()) return {};
  for (const auto& s : states) check_inputs(env, spec, s);
  std::map<LatticePoint, double> out;
  backward_induction(env, spec, Box::hull(states), n, options,
                     [&](std::size_t m, const Box& box,
                         std::span<const double> v) {
                       if (m != 1) return;
                       for (const auto& s : states) {
                         out[s] = v[box.index(s.coords())] /
                                  static_cast<double>(n);
                       }
                     });
  return out;
}

std::size_t StrategyProfile::box_index(std::size_t m,
                                       const LatticePoint& z) const {
  if (m == 0 || m > stages_.size()) {
    throw RangeError("stage " + std::to_string(m) + " outside [1.." +
                     std::to_string(stages_.size()) + "]");
  }
  const auto& layer = stages_[m - 1].layer;
  if (!layer.contains(z)) {
    throw RangeError("state " + z.to_string() + " is not reachable at stage " +
                     std::to_string(m));
  }
  return layer.box.index(z.coords());
}

std::size_t StrategyProfile::player1_action(std::size_t m,
                                            const LatticePoint& z) const {
  return stages_[m - 1].p1[box_index(m, z)];
}

std::size_t StrategyProfile::player2_reply(std::size_t m, const LatticePoint& z,
                                           std::size_t i) const {
  const std::size_t idx = box_index(m, z);
  if (i >= p1_actions_) throw RangeError("player 1 action out of range");
  return stages_[m - 1].p2[idx * p1_actions_ + i];
}

StrategyProfile extract_strategy(const ValueTable& table,
                                 const Environment& env, const GameSpec& spec) {
  const std::size_t n = table.horizon();
  const std::size_t p1 = spec.num_actions_p1();
  const std::size_t p2 = spec.num_actions_p2();
  const bool state_only = env.state_only();
  std::vector<double> pay(p1 * p2);
  std::vector<StrategyProfile::Stage> stages;
  stages.reserve(n);
  for (std::size_t m = 1; m <= n; ++m) {
    const auto& cur = table.stage(m);
    const auto& next = table.stage(m + 1);
    const Box& box = cur.layer.box;
    const auto offsets = detail::transition_offsets(spec, next.layer.box);
    StrategyProfile::Stage st{cur.layer,
                              std::vector<std::uint16_t>(box.volume(), 0),
                              std::vector<std::uint16_t>(box.volume() * p1, 0)};
    for_each_point(box, [&](std::span<const Coord> z, std::size_t idx) {
      if (!cur.layer.reachable[idx]) return;
      const double* succ =
          next.cumulative.data() + next.layer.box.signed_index(z);
      if (state_only) {
        std::fill(pay.begin(), pay.end(), 0.0);
      } else {
        env.fill_payoffs(z, pay);
      }
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < p1; ++i) {
        double worst = std::numeric_limits<double>::infinity();
        std::size_t reply = 0;
        for (std::size_t j = 0; j < p2; ++j) {
          const std::size_t a = i * p2 + j;
          const double v = state_only ? succ[offsets[a]] : pay[a] + succ[offsets[a]];
          if (v < worst) {
            worst = v;
            reply = j;
          }
        }
        st.p2[idx * p1 + i] = static_cast<std::uint16_t>(reply);
        if (worst > best) {
          best = worst;
          st.p1[idx] = static_cast<std::uint16_t>(i);
        }
      }
    });
    stages.push_back(std::move(st));
  }
  return StrategyProfile(p1, std::move(stages));
}

Player1Policy player1_policy(const StrategyProfile& profile) {
  return [&profile](std::size_t m, const LatticePoint& z) {
    return profile.player1_action(m, z);
  };
}

Player2Policy player2_policy(const StrategyProfile& profile) {
  return [&profile](std::size_t m, const LatticePoint& z, std::size_t i) {
    return profile.player2_reply(m, z, i);
  };
}

Trajectory simulate(const Environment& env, const GameSpec& spec,
                    const LatticePoint& origin, std::size_t n,
                    const Player1Policy& p1, const Player2Policy& p2) {
  Trajectory t;
  t.states.push_back(origin);
  for (std::size_t m = 1; m <= n; ++m) {
    const LatticePoint& z = t.states.back();
    const std::size_t i = p1(m, z);
    const std::size_t j = p2(m, z, i);
    t.p1_actions.push_back(i);
    t.p2_actions.push_back(j);
    t.payoffs.push_back(env.payoff(z, i, j));
    t.states.push_back(z + spec.transition(i, j));
  }
  for (std::size_t m = n; m-- > 0;) t.total = t.payoffs[m] + t.total;
  t.average = t.total / static_cast<double>(n);
  return t;
}

namespace {

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (r > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(base, 1)) {
      return std::uint64_t{1} << 62;
    }
    r *= base;
  }
  return r;
}

// Increments a mixed-radix counter; returns false after the last value.
bool advance(std::vector<std::size_t>& digits, std::size_t radix) {
  for (auto& d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

constexpr std::uint64_t kBruteForceWork = 200'000'000;

}  // namespace

BruteForceResult brute_force(const Environment& env, const GameSpec& spec,
                             const LatticePoint& origin, std::size_t n) {
  check_inputs(env, spec, origin);
  const std::size_t ni = spec.num_actions_p1();
  const std::size_t nj = spec.num_actions_p2();
  const std::size_t pairs = ni * nj;
  if (n == 0 || n > 3 || ni > 3 || nj > 3) {
    throw RangeError("brute force is limited to n <= 3 and at most 3 actions");
  }
  // Player 1 decides at nodes indexed by Player 2's past actions; Player 2 at
  // nodes indexed by Player 1's actions up to and including the current one.
  std::vector<std::size_t> p1_offset(n + 1, 0), p2_offset(n + 1, 0);
  for (std::size_t m = 0; m < n; ++m) {
    p1_offset[m + 1] = p1_offset[m] + ipow(nj, m);
    p2_offset[m + 1] = p2_offset[m] + ipow(ni, m + 1);
  }
  const std::uint64_t maxmin_work = ipow(ni, p1_offset[n]) * ipow(nj, n) * n;
  const std::uint64_t minmax_work = ipow(nj, p2_offset[n]) * ipow(ni, n) * n;
  if (maxmin_work > kBruteForceWork || minmax_work > kBruteForceWork) {
    throw RangeError("brute force enumeration too large: " +
                     std::to_string(std::max(maxmin_work, minmax_work)) +
                     " steps");
  }

  // pay[m][h * pairs + a]: payoff at stage m+1 after action-pair history h.
  std::vector<std::vector<double>> pay(n);
  std::vector<LatticePoint> states{origin};
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<LatticePoint> next;
    pay[m].resize(states.size() * pairs);
    for (std::size_t h = 0; h < states.size(); ++h) {
      for (std::size_t a = 0; a < pairs; ++a) {
        pay[m][h * pairs + a] = env.payoff(states[h], a / nj, a % nj);
        next.push_back(states[h] + spec.transitions()[a]);
      }
    }
    states = std::move(next);
  }

  std::vector<double> g(n);
  auto fold = [&] {
    double acc = 0.0;
    for (std::size_t m = n; m-- > 0;) acc = g[m] + acc;
    return acc;
  };

  double maxmin = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> sigma(p1_offset[n], 0);
  do {
    double worst = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> js(n, 0);
    do {
      std::size_t h = 0, prefix = 0;
      for (std::size_t m = 0; m < n; ++m) {
        const std::size_t i = sigma[p1_offset[m] + prefix];
        const std::size_t a = i * nj + js[m];
        g[m] = pay[m][h * pairs + a];
        h = h * pairs + a;
        prefix = prefix * nj + js[m];
      }
      worst = std::min(worst, fold());
    } while (advance(js, nj));
    maxmin = std::max(maxmin, worst);
  } while (advance(sigma, ni));

  double minmax = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> tau(p2_offset[n], 0);
  do {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> is(n, 0);
    do {
      std::size_t h = 0, prefix = 0;
      for (std::size_t m = 0; m < n; ++m) {
        prefix = prefix * ni + is[m];
        const std::size_t j = tau[p2_offset[m] + prefix];
        const std::size_t a = is[m] * nj + j;
        g[m] = pay[m][h * pairs + a];
        h = h * pairs + a;
      }
      best = std::max(best, fold());
    } while (advance(is, ni));
    minmax = std::min(minmax, best);
  } while (advance(tau, nj));

  const auto len = static_cast<double>(n);
  return {maxmin / len, minmax / len};
}

double brute_force_value(const Environment& env, const GameSpec& spec,
                         const LatticePoint& origin, std::size_t n) {
  const auto r = brute_force(env, spec, origin, n);
  if (r.maxmin != r.minmax) {
    throw Error("brute force maxmin " + std::to_string(r.maxmin) +
                " differs from minmax " + std::to_string(r.minmax));
  }
  return r.maxmin;
}

double hyperplane_zeroed_value(const Environment& env, const GameSpec& spec,
                               const LatticePoint& origin, std::size_t n,
                               Coord level, const SolveOptions& options) {
  if (!validate_orientation(spec)) {
    throw OrientationError("hyperplane zeroing requires an oriented game");
  }
  check_inputs(env, spec, origin);
  const ZeroedOnHyperplane<Environment> zeroed(env, *spec.direction(), level);
  return solve_value(zeroed, spec, origin, n, options);
}

}  // namespace percolation
