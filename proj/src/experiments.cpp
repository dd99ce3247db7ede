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

#include "percolation/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>

#include "percolation/errors.hpp"
#include "percolation/parallel.hpp"
#include "percolation/prf.hpp"

namespace percolation {
namespace {

const Squares& require_squares(const ExperimentConfig& config) {
  const auto* s = std::get_if<Squares>(&config.model);
  if (!s) throw ModelError("this experiment requires the Squares model");
  return *s;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

// Flattens per-seed results in seed order.
template <class T>
std::vector<T> flatten(std::vector<std::vector<T>> parts) {
  std::vector<T> out;
  for (auto& p : parts) {
    out.insert(out.end(), std::make_move_iterator(p.begin()),
               std::make_move_iterator(p.end()));
  }
  return out;
}

Coord interval_distance(Coord center, Coord half) {
  const Coord lo = center - half, hi = center + half;
  if (lo > 0) return lo;
  if (hi < 0) return -hi;
  return 0;
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.num_seeds == 0) throw ConfigError("num_seeds must be at least 1");
  if (config.horizons.empty()) throw ConfigError("no horizons given");
  for (std::size_t k = 0; k < config.horizons.size(); ++k) {
    if (config.horizons[k] == 0) throw ConfigError("horizons must be >= 1");
    if (k > 0 && config.horizons[k] <= config.horizons[k - 1]) {
      throw ConfigError("horizons must be sorted ascending without repeats");
    }
  }
  for (double l : config.lambdas) {
    if (!(l >= 0.0)) throw ConfigError("lambda values must be >= 0");
  }
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1)");
  }
  for (std::size_t p : config.pairs) {
    if (p == 0) throw ConfigError("concatenation lengths must be >= 1");
  }
  if (config.origin && config.origin->dim() != config.spec.dim()) {
    throw ConfigError("origin does not match game dimension");
  }
  validate_model(config.model, config.spec);
}

std::uint64_t run_seed(const ExperimentConfig& config, std::size_t index) {
  return prf::derive_seed(config.base_seed, index);
}

Box cone_region(const GameSpec& spec, const LatticePoint& origin,
                std::size_t stages) {
  const Box first = Box::around(origin);
  const Box last = stage_box(spec, first, std::max<std::size_t>(stages, 1));
  std::vector<Coord> lo(spec.dim()), hi(spec.dim());
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    lo[k] = std::min(first.lo()[k], last.lo()[k]);
    hi[k] = std::max(first.hi()[k], last.hi()[k]);
  }
  return Box(std::move(lo), std::move(hi));
}

Environment make_environment(const ExperimentConfig& config, std::uint64_t seed,
                             std::size_t stages) {
  if (std::holds_alternative<Squares>(config.model)) {
    return Environment(config.model, seed,
                       cone_region(config.spec, config.start(), stages),
                       config.catalog_budget);
  }
  return Environment(config.model, seed);
}

ConvergenceReport estimate_expected_value(const ExperimentConfig& config) {
  validate_config(config);
  const auto& horizons = config.horizons;
  const std::size_t max_n = horizons.back();
  const LatticePoint origin = config.start();
  std::vector<std::vector<RunRecord>> per_seed(config.num_seeds);

  parallel_for(config.num_seeds, config.threads, [&](std::size_t s) {
    const std::uint64_t seed = run_seed(config, s);
    auto& out = per_seed[s];
    for (std::size_t n : horizons) out.push_back({s, seed, n, {}, {}, 0.0, {}});
    std::optional<Environment> env;
    try {
      env.emplace(make_environment(config, seed,
                                   config.record_cone_min ? 2 * max_n : max_n));
    } catch (const BudgetError& e) {
      for (auto& r : out) r.error = e.what();
      return;
    }
    for (auto& r : out) {
      const auto start = std::chrono::steady_clock::now();
      try {
        r.value = solve_value(*env, config.spec, origin, r.n, config.solve);
        if (config.record_cone_min) {
          const StageCone cone = reachable_cone(config.spec, origin, r.n);
          std::vector<LatticePoint> visited;
          for (std::size_t m = 1; m <= r.n; ++m) {
            const auto pts = cone.stage(m).points();
            visited.insert(visited.end(), pts.begin(), pts.end());
          }
          const auto profile =
              value_profile(*env, config.spec, visited, r.n, config.solve);
          double lowest = std::numeric_limits<double>::infinity();
          for (const auto& [z, v] : profile) lowest = std::min(lowest, v);
          r.min_cone_value = lowest;
        }
      } catch (const BudgetError& e) {
        r.error = e.what();
      }
      r.wall_ms = elapsed_ms(start);
    }
  });
  return summarize_runs(flatten(std::move(per_seed)), horizons,
                        config.num_seeds);
}

ConvergenceReport summarize_runs(std::vector<RunRecord> records,
                                 std::span<const std::size_t> horizons,
                                 std::size_t num_seeds) {
  ConvergenceReport report;
  for (std::size_t n : horizons) {
    ConvergenceRow row;
    row.n = n;
    double sum = 0.0;
    for (const auto& r : records) {
      if (r.n == n && r.value) {
        sum += *r.value;
        ++row.count;
      }
    }
    if (row.count > 0) {
      row.mean = sum / static_cast<double>(row.count);
      double ss = 0.0;
      for (const auto& r : records) {
        if (r.n == n && r.value) ss += (*r.value - row.mean) * (*r.value - row.mean);
      }
      row.std = row.count > 1
                    ? std::sqrt(ss / static_cast<double>(row.count - 1))
                    : 0.0;
      row.ci95 = 1.96 * row.std / std::sqrt(static_cast<double>(row.count));
    }
    row.complete = row.count == num_seeds;
    report.rows.push_back(row);
  }
  for (auto& row : report.rows) {
    if (row.n % 2 != 0 || row.count == 0) continue;
    for (const auto& half : report.rows) {
      if (half.n * 2 == row.n && half.count > 0) {
        row.diff_to_half = std::abs(row.mean - half.mean);
      }
    }
  }
  std::vector<double> xs, ys;
  for (const auto& row : report.rows) {
    if (row.diff_to_half && *row.diff_to_half > 0.0) {
      xs.push_back(static_cast<double>(row.n));
      ys.push_back(*row.diff_to_half);
    }
  }
  report.slope = fit_loglog_slope(xs, ys);
  report.records = std::move(records);
  return report;
}

std::optional<double> fit_loglog_slope(std::span<const double> x,
                                       std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

Inversions difference_inversions(const ConvergenceReport& report) {
  auto ci_of = [&](std::size_t n) {
    for (const auto& r : report.rows) {
      if (r.n == n) return r.ci95;
    }
    return 0.0;
  };
  std::vector<const ConvergenceRow*> rows;
  for (const auto& r : report.rows) {
    if (r.diff_to_half) rows.push_back(&r);
  }
  Inversions inv;
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double a = *rows[k]->diff_to_half;
    const double b = *rows[k + 1]->diff_to_half;
    if (b > a) {
      ++inv.total;
      const std::size_t n = rows[k + 1]->n;
      if (b - a > ci_of(n) + ci_of(n / 2)) ++inv.unexplained;
    }
  }
  return inv;
}

double azuma_bound(double lambda, std::size_t n, double sup_norm) {
  return std::exp(-lambda * lambda * static_cast<double>(n) /
                  (8.0 * sup_norm * sup_norm));
}

std::vector<ConcentrationPoint> concentration_from_runs(
    std::span<const RunRecord> records, std::span<const std::size_t> horizons,
    std::span<const double> lambdas, double sup_norm) {
  std::vector<ConcentrationPoint> out;
  for (std::size_t n : horizons) {
    std::vector<double> values;
    for (const auto& r : records) {
      if (r.n == n && r.value) values.push_back(*r.value);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    if (!values.empty()) mean /= static_cast<double>(values.size());
    for (double lambda : lambdas) {
      ConcentrationPoint p;
      p.n = n;
      p.lambda = lambda;
      p.samples = values.size();
      p.bound = azuma_bound(lambda, n, sup_norm);
      if (!values.empty()) {
        const auto hits = std::count_if(values.begin(), values.end(), [&](double v) {
          return std::abs(v - mean) >= lambda;
        });
        p.empirical = static_cast<double>(hits) / static_cast<double>(values.size());
        const double sigma = std::sqrt(p.bound * (1.0 - p.bound) /
                                       static_cast<double>(values.size()));
        p.flagged = p.empirical > p.bound + 3.0 * sigma;
      }
      out.push_back(p);
    }
  }
  return out;
}

std::vector<ConcentrationPoint> concentration_curve(
    const ExperimentConfig& config) {
  const auto report = estimate_expected_value(config);
  const double norm = Environment(config.model, config.base_seed).sup_norm();
  return concentration_from_runs(report.records, config.horizons,
                                 config.lambdas, norm);
}

ConcatenationResult concatenation_check(const Environment& env,
                                        const GameSpec& spec,
                                        const LatticePoint& origin,
                                        std::size_t m, std::size_t n,
                                        const SolveOptions& options) {
  if (m == 0 || n == 0) throw RangeError("m and n must be at least 1");
  const double v_mn = solve_value(env, spec, origin, m + n, options);
  const double v_m = solve_value(env, spec, origin, m, options);
  const auto states = reachable_cone(spec, origin, m + 1).stage(m + 1).points();
  const auto profile = value_profile(env, spec, states, n, options);
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& [z, v] : profile) lowest = std::min(lowest, v);

  const auto dm = static_cast<double>(m), dn = static_cast<double>(n);
  ConcatenationResult r;
  r.lhs = v_mn;
  r.rhs = (dm * v_m + dn * lowest) / (dm + dn);
  r.lhs_total = v_mn * (dm + dn);
  r.rhs_total = dm * v_m + dn * lowest;
  r.holds = r.lhs >= r.rhs - 1e-9;
  return r;
}

std::vector<ConcatRecord> concatenation_sweep(const ExperimentConfig& config) {
  validate_config(config);
  if (config.pairs.empty()) throw ConfigError("no concatenation lengths given");
  const std::size_t longest =
      2 * *std::max_element(config.pairs.begin(), config.pairs.end());
  const LatticePoint origin = config.start();
  std::vector<std::vector<ConcatRecord>> per_seed(config.num_seeds);
  parallel_for(config.num_seeds, config.threads, [&](std::size_t s) {
    const std::uint64_t seed = run_seed(config, s);
    const Environment env = make_environment(config, seed, longest + 1);
    for (std::size_t m : config.pairs) {
      for (std::size_t n : config.pairs) {
        per_seed[s].push_back(
            {seed, m, n,
             concatenation_check(env, config.spec, origin, m, n, config.solve)});
      }
    }
  });
  return flatten(std::move(per_seed));
}

std::vector<HyperplaneRecord> hyperplane_sweep(const ExperimentConfig& config) {
  validate_config(config);
  if (!validate_orientation(config.spec)) {
    throw OrientationError("hyperplane sweep requires an oriented game");
  }
  const auto& u = *config.spec.direction();
  const LatticePoint origin = config.start();
  std::vector<std::vector<HyperplaneRecord>> per_seed(config.num_seeds);
  parallel_for(config.num_seeds, config.threads, [&](std::size_t s) {
    const std::uint64_t seed = run_seed(config, s);
    const Environment env =
        make_environment(config, seed, config.horizons.back());
    const double norm = env.sup_norm();
    for (std::size_t n : config.horizons) {
      const double v = solve_value(env, config.spec, origin, n, config.solve);
      const StageCone cone = reachable_cone(config.spec, origin, n);
      Coord lo = std::numeric_limits<Coord>::max();
      Coord hi = std::numeric_limits<Coord>::min();
      for (std::size_t m = 1; m <= n; ++m) {
        for (const auto& z : cone.stage(m).points()) {
          lo = std::min(lo, z.dot(u));
          hi = std::max(hi, z.dot(u));
        }
      }
      for (Coord level = lo; level <= hi; ++level) {
        HyperplaneRecord r{seed, n, level, v, 0.0, false};
        r.zeroed_value = hyperplane_zeroed_value(env, config.spec, origin, n,
                                                 level, config.solve);
        r.holds = std::abs(r.zeroed_value - r.value) <=
                  norm / static_cast<double>(n) + 1e-12;
        per_seed[s].push_back(r);
      }
    }
  });
  return flatten(std::move(per_seed));
}

LatticePoint ball_point(std::uint64_t seed, Coord radius, std::uint64_t tag) {
  if (radius < 0) throw RangeError("ball radius must be non-negative");
  const Coord count = (2 * radius + 1) * (2 * radius * radius + 2 * radius + 3) / 3;
  const std::uint64_t h = prf::draw(seed, prf::Stream::kPlantCenter,
                                    static_cast<unsigned>(tag), {});
  Coord target = static_cast<Coord>(h % static_cast<std::uint64_t>(count));
  for (Coord a = -radius; a <= radius; ++a) {
    const Coord ra = radius - std::abs(a);
    for (Coord b = -ra; b <= ra; ++b) {
      const Coord rb = ra - std::abs(b);
      const Coord width = 2 * rb + 1;
      if (target < width) return LatticePoint{a, b, -rb + target};
      target -= width;
    }
  }
  throw Error("internal: ball enumeration out of range");
}

CounterexampleReport counterexample_run(const ExperimentConfig& config,
                                        int scale, bool planted) {
  validate_config(config);
  const Squares& base = require_squares(config);
  if (scale < 2 || scale > base.k_max) {
    throw RangeError("counterexample scale must lie in [2, k_max]");
  }
  if (config.spec.dim() != 3) throw ModelError("counterexample needs dim 3");
  const std::size_t horizon = std::size_t{1} << (scale - 2);
  const auto radius = static_cast<Coord>(
      std::floor(config.epsilon * static_cast<double>(horizon)));
  const LatticePoint origin = LatticePoint::zero(3);
  const double inv = 1.0 / static_cast<double>(horizon);

  struct SeedResult {
    std::vector<CounterexampleRecord> records;
    bool missing[2] = {false, false};
  };
  std::vector<SeedResult> per_seed(config.num_seeds);
  parallel_for(config.num_seeds, config.threads, [&](std::size_t s) {
    const std::uint64_t seed = run_seed(config, s);
    for (SquareKind kind : {SquareKind::kOne, SquareKind::kZero}) {
      Squares model = base;
      std::optional<LatticePoint> plant;
      if (planted) {
        plant = ball_point(seed, radius, static_cast<std::uint64_t>(kind));
        model.plants.push_back({kind, scale, *plant});
      }
      const Environment env(model, seed, cone_region(config.spec, origin, horizon),
                            config.catalog_budget);
      const auto found = find_complete_squares(env, kind, scale, radius);
      std::optional<LatticePoint> witness;
      if (plant) {
        if (std::find(found.begin(), found.end(), *plant) != found.end()) {
          witness = plant;
        }
      } else if (!found.empty()) {
        witness = *std::min_element(
            found.begin(), found.end(), [](const auto& a, const auto& b) {
              return std::pair(a.norm1(), a) < std::pair(b.norm1(), b);
            });
      }
      if (!witness) {
        per_seed[s].missing[static_cast<int>(kind)] = true;
        continue;
      }
      CounterexampleRecord r;
      r.seed = seed;
      r.scale = scale;
      r.kind = kind;
      r.center = *witness;
      r.dist = witness->norm1();
      r.horizon = horizon;
      r.value = solve_value(env, config.spec, origin, horizon, config.solve);
      if (kind == SquareKind::kOne) {
        r.bound = 1.0 - config.epsilon - inv;
        r.holds = r.value >= r.bound - 1e-12;
      } else {
        r.bound = config.epsilon + inv;
        r.holds = r.value <= r.bound + 1e-12;
      }
      per_seed[s].records.push_back(r);
    }
  });
  CounterexampleReport report;
  for (auto& p : per_seed) {
    report.records.insert(report.records.end(), p.records.begin(),
                          p.records.end());
    report.missing_zero += p.missing[0];
    report.missing_one += p.missing[1];
  }
  return report;
}

std::vector<WitnessFrequency> property_witness_scan(
    const ExperimentConfig& config, std::span<const int> scales) {
  validate_config(config);
  const Squares& model = require_squares(config);
  std::vector<WitnessFrequency> out;
  for (int j : scales) {
    if (j < 2 || j > model.k_max) {
      throw RangeError("witness scale must lie in [2, k_max]");
    }
    const double unit = static_cast<double>(Coord{1} << (j - 2));
    const auto r = static_cast<Coord>(std::floor(config.epsilon * unit));
    const auto big_r =
        static_cast<Coord>(std::floor((4.0 + config.epsilon) * unit));

    std::uint64_t work = 0;
    if (model.random_draws) {
      for (int k = j + 1; k <= model.k_max; ++k) {
        const auto w = static_cast<std::uint64_t>(2 * (big_r + square_side(k) / 2) + 1);
        work += static_cast<std::uint64_t>(2 * big_r + 1) * w * w;
      }
    }
    if (work * config.num_seeds > config.catalog_budget) {
      throw BudgetError("witness scan", work * config.num_seeds,
                        config.catalog_budget);
    }

    std::vector<std::uint8_t> b(config.num_seeds), c(config.num_seeds);
    parallel_for(config.num_seeds, config.threads, [&](std::size_t s) {
      const std::uint64_t seed = run_seed(config, s);
      bool b_event = false;
      for (const auto& p : model.plants) {
        b_event |= p.kind == SquareKind::kOne && p.scale == j &&
                   p.center.norm1() <= r;
      }
      if (model.random_draws && !b_event) {
        const std::uint64_t base = prf::prefix(seed, prf::Stream::kSquareOne, j);
        for (Coord x = -r; x <= r && !b_event; ++x) {
          const Coord rx = r - std::abs(x);
          const std::uint64_t hx = prf::fold(base, x);
          for (Coord y = -rx; y <= rx && !b_event; ++y) {
            const Coord ry = rx - std::abs(y);
            const std::uint64_t hy = prf::fold(hx, y);
            for (Coord h = -ry; h <= ry; ++h) {
              if (prf::bernoulli_pow2(prf::fold(hy, h), 3 * j)) {
                b_event = true;
                break;
              }
            }
          }
        }
      }
      bool blocked = false;
      for (const auto& p : model.plants) {
        if (p.kind != SquareKind::kZero || p.scale <= j) continue;
        const Coord half = square_side(p.scale) / 2;
        blocked |= std::abs(p.center[1]) + interval_distance(p.center[0], half) +
                       interval_distance(p.center[2], half) <=
                   big_r;
      }
      for (int k = j + 1; k <= model.k_max && model.random_draws && !blocked;
           ++k) {
        const Coord half = square_side(k) / 2;
        const std::uint64_t base = prf::prefix(seed, prf::Stream::kSquareZero, k);
        const auto bits = static_cast<unsigned>(3 * k);
        for (Coord x = -big_r - half; x <= big_r + half && !blocked; ++x) {
          const Coord dx = interval_distance(x, half);
          const std::uint64_t hx = prf::fold(base, x);
          for (Coord y = -(big_r - dx); y <= big_r - dx && !blocked; ++y) {
            const Coord left = big_r - dx - std::abs(y);
            const std::uint64_t hy = prf::fold(hx, y);
            for (Coord h = -left - half; h <= left + half; ++h) {
              if (prf::bernoulli_pow2(prf::fold(hy, h), bits)) {
                blocked = true;
                break;
              }
            }
          }
        }
      }
      b[s] = b_event;
      c[s] = !blocked;
    });

    WitnessFrequency f;
    f.scale = j;
    f.samples = config.num_seeds;
    double sb = 0, sc = 0, sbc = 0;
    for (std::size_t s = 0; s < config.num_seeds; ++s) {
      sb += b[s];
      sc += c[s];
      sbc += b[s] && c[s];
    }
    const auto ns = static_cast<double>(config.num_seeds);
    f.b_freq = sb / ns;
    f.c_freq = sc / ns;
    f.joint_freq = sbc / ns;
    const double var_b = f.b_freq * (1 - f.b_freq);
    const double var_c = f.c_freq * (1 - f.c_freq);
    if (var_b > 0 && var_c > 0) {
      f.correlation = (f.joint_freq - f.b_freq * f.c_freq) / std::sqrt(var_b * var_c);
    }
    out.push_back(f);
  }
  return out;
}

OracleSuiteResult oracle_suite(std::size_t trials, std::uint64_t base_seed) {
  OracleSuiteResult result;
  result.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(prf::derive_seed(base_seed, t));
    std::vector<LatticePoint> q;
    for (int a = 0; a < 4; ++a) q.push_back({static_cast<Coord>(rng() % 3) - 1});
    const GameSpec spec(1, 2, 2, std::move(q));
    IidTable table;
    for (int k = 0; k < 3; ++k) {
      PayoffMatrix m{2, 2, {}};
      for (int e = 0; e < 4; ++e) m.entries.push_back(static_cast<double>(rng() & 1));
      table.support.push_back(std::move(m));
    }
    table.probs = {0.25, 0.25, 0.5};
    const std::size_t n = 1 + rng() % 3;
    const Environment env(table, rng());
    const LatticePoint origin{0};
    const double solved = solve(env, spec, origin, n).value();
    const auto bf = brute_force(env, spec, origin, n);
    if (solved != bf.maxmin) ++result.mismatches;
    if (bf.maxmin != bf.minmax) ++result.asymmetric;
  }
  return result;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

const char* kind_name(SquareKind kind) {
  return kind == SquareKind::kOne ? "1" : "0";
}

}  // namespace

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records,
                    bool include_timing) {
  out << "seed,n,value,min_cone_value,wall_ms\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << optional_number(r.value) << ','
        << optional_number(r.min_cone_value) << ','
        << (include_timing ? format_number(r.wall_ms) : std::string()) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "n,mean,std,ci95,diff_to_half\n";
  for (const auto& r : report.rows) {
    if (r.count == 0) {
      out << r.n << ",,,,\n";
      continue;
    }
    out << r.n << ',' << format_number(r.mean) << ',' << format_number(r.std)
        << ',' << format_number(r.ci95) << ',' << optional_number(r.diff_to_half)
        << '\n';
  }
}

void write_concentration_csv(std::ostream& out,
                             std::span<const ConcentrationPoint> points) {
  out << "n,lambda,empirical,bound\n";
  for (const auto& p : points) {
    out << p.n << ',' << format_number(p.lambda) << ','
        << format_number(p.empirical) << ',' << format_number(p.bound) << '\n';
  }
}

void write_concat_csv(std::ostream& out, std::span<const ConcatRecord> records) {
  out << "seed,m,n,lhs,rhs,holds\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.m << ',' << r.n << ','
        << format_number(r.result.lhs) << ',' << format_number(r.result.rhs)
        << ',' << (r.result.holds ? 1 : 0) << '\n';
  }
}

void write_hyperplane_csv(std::ostream& out,
                          std::span<const HyperplaneRecord> records) {
  out << "seed,n,level,value,zeroed_value,holds\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << r.level << ','
        << format_number(r.value) << ',' << format_number(r.zeroed_value) << ','
        << (r.holds ? 1 : 0) << '\n';
  }
}

void write_counterexample_csv(std::ostream& out,
                              std::span<const CounterexampleRecord> records) {
  out << "seed,scale,kind,center_x,center_y,center_h,dist,horizon,value,bound,"
         "holds\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.scale << ',' << kind_name(r.kind) << ','
        << r.center[0] << ',' << r.center[1] << ',' << r.center[2] << ','
        << r.dist << ',' << r.horizon << ',' << format_number(r.value) << ','
        << format_number(r.bound) << ',' << (r.holds ? 1 : 0) << '\n';
  }
}

}  // namespace percolation
