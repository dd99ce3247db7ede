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

#ifndef PERCOLATION_EXPERIMENTS_HPP_
#define PERCOLATION_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "percolation/environment.hpp"
#include "percolation/game.hpp"
#include "percolation/solver.hpp"

namespace percolation {

struct ExperimentConfig {
  GameSpec spec = GameSpec::counterexample();
  EnvironmentModel model = IidBernoulli{0.5};
  std::uint64_t base_seed = 1;
  std::size_t num_seeds = 100;
  std::vector<std::size_t> horizons{8, 16, 32};
  std::vector<double> lambdas{0.05, 0.1, 0.2, 0.3};
  double epsilon = 0.25;
  std::optional<LatticePoint> origin;
  std::vector<std::size_t> pairs{1, 2, 4, 8, 16};
  int scale = 6;
  unsigned threads = 0;
  SolveOptions solve;
  std::uint64_t catalog_budget = kDefaultCatalogBudget;
  // Also compute min v_n(z) over the states visited in the first n stages.
  bool record_cone_min = false;

  LatticePoint start() const {
    return origin ? *origin : LatticePoint::zero(spec.dim());
  }
};

// Throws ConfigError on unsorted horizons, zero seeds, epsilon outside (0,1),
// or a model that does not fit the game.
void validate_config(const ExperimentConfig& config);

// Environment seed of run `index`.
std::uint64_t run_seed(const ExperimentConfig& config, std::size_t index);

// Hull of every stage box reached within `stages` stages from `origin`.
Box cone_region(const GameSpec& spec, const LatticePoint& origin,
                std::size_t stages);

// Environment for one run, with a Squares catalog covering `stages` stages.
Environment make_environment(const ExperimentConfig& config, std::uint64_t seed,
                             std::size_t stages);

struct RunRecord {
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::optional<double> value;
  std::optional<double> min_cone_value;
  double wall_ms = 0.0;
  std::string error;  // non-empty when the run failed (e.g. budget)
};

struct ConvergenceRow {
  std::size_t n = 0;
  std::size_t count = 0;  // completed runs
  double mean = 0.0;
  double std = 0.0;
  double ci95 = 0.0;  // 1.96 std / sqrt(count)
  std::optional<double> diff_to_half;  // |mean(n) - mean(n/2)|
  bool complete = false;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<RunRecord> records;
  // Least-squares slope of log(diff_to_half) against log(n).
  std::optional<double> slope;
};

// Runs every (seed, horizon) pair and summarises v_n(origin) per horizon.
// Budget failures are recorded in the run records, not thrown.
ConvergenceReport estimate_expected_value(const ExperimentConfig& config);

ConvergenceReport summarize_runs(std::vector<RunRecord> records,
                                 std::span<const std::size_t> horizons,
                                 std::size_t num_seeds);

std::optional<double> fit_loglog_slope(std::span<const double> x,
                                       std::span<const double> y);

struct Inversions {
  std::size_t total = 0;
  std::size_t unexplained = 0;
};

// Counts increases between consecutive successive differences. An increase
// is explained when it is within the sum of the ci95 half-widths of the two
// horizons that define the larger difference.
Inversions difference_inversions(const ConvergenceReport& report);

// exp(-lambda^2 n / (8 |g|^2))
double azuma_bound(double lambda, std::size_t n, double sup_norm);

struct ConcentrationPoint {
  std::size_t n = 0;
  double lambda = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  std::size_t samples = 0;
  bool flagged = false;  // empirical > bound + 3 binomial sigma
};

std::vector<ConcentrationPoint> concentration_from_runs(
    std::span<const RunRecord> records, std::span<const std::size_t> horizons,
    std::span<const double> lambdas, double sup_norm);

std::vector<ConcentrationPoint> concentration_curve(
    const ExperimentConfig& config);

struct ConcatenationResult {
  double lhs = 0.0;        // v_{m+n}(origin)
  double rhs = 0.0;        // (m v_m(origin) + n min v_n(z)) / (m + n)
  double lhs_total = 0.0;  // (m + n) v_{m+n}(origin)
  double rhs_total = 0.0;  // m v_m(origin) + n min v_n(z)
  bool holds = false;
};

// The minimum runs over the states reachable at stage m + 1.
ConcatenationResult concatenation_check(const Environment& env,
                                        const GameSpec& spec,
                                        const LatticePoint& origin,
                                        std::size_t m, std::size_t n,
                                        const SolveOptions& options = {});

struct ConcatRecord {
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  ConcatenationResult result;
};

// Every seed against every (m, n) in config.pairs^2.
std::vector<ConcatRecord> concatenation_sweep(const ExperimentConfig& config);

struct HyperplaneRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  Coord level = 0;
  double value = 0.0;
  double zeroed_value = 0.0;
  bool holds = false;  // |zeroed - value| <= |g| / n + 1e-12
};

// Every seed, horizon and hyperplane level met by the cone.
std::vector<HyperplaneRecord> hyperplane_sweep(const ExperimentConfig& config);

struct CounterexampleRecord {
  std::uint64_t seed = 0;
  int scale = 0;
  SquareKind kind = SquareKind::kOne;
  LatticePoint center;
  Coord dist = 0;
  std::size_t horizon = 0;
  double value = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct CounterexampleReport {
  std::vector<CounterexampleRecord> records;
  std::size_t missing_one = 0;   // seeds without a complete 1-square witness
  std::size_t missing_zero = 0;  // seeds without a complete 0-square witness
};

// For witness squares of side T_scale within 1-norm distance
// floor(epsilon * T_{scale-2}) of the origin, solves the T_{scale-2}-stage
// game from the origin and checks v >= 1 - epsilon - 1/T (1-squares) or
// v <= epsilon + 1/T (0-squares). With `planted`, each seed plants one square
// of each kind at a seed-derived center in the ball; a planted square broken
// by a larger square of the other kind counts as missing.
CounterexampleReport counterexample_run(const ExperimentConfig& config,
                                        int scale, bool planted);

// Seed-derived point of the 1-norm ball of the given radius.
LatticePoint ball_point(std::uint64_t seed, Coord radius, std::uint64_t tag);

struct WitnessFrequency {
  int scale = 0;
  std::size_t samples = 0;
  double b_freq = 0.0;      // a 1-square center of this scale in the ball
  double c_freq = 0.0;      // no larger 0-square meets the outer ball
  double joint_freq = 0.0;  // both
  double correlation = 0.0;
};

// Per witness scale j: B-like event "a 1-square of scale j is centered within
// floor(epsilon T_{j-2})" and C-like event "no 0-square of scale in (j, k_max]
// meets the ball of radius floor((4 + epsilon) T_{j-2})".
std::vector<WitnessFrequency> property_witness_scan(
    const ExperimentConfig& config, std::span<const int> scales);

struct OracleSuiteResult {
  std::size_t trials = 0;
  std::size_t mismatches = 0;   // solve != brute force
  std::size_t asymmetric = 0;   // brute-force maxmin != minmax
};

// Random d = 1, 2x2, {0,1}-payoff instances with n <= 3.
OracleSuiteResult oracle_suite(std::size_t trials, std::uint64_t base_seed);

// Shortest decimal representation that round-trips.
std::string format_number(double v);

void write_runs_csv(std::ostream& out, std::span<const RunRecord> records,
                    bool include_timing);
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);
void write_concentration_csv(std::ostream& out,
                             std::span<const ConcentrationPoint> points);
void write_concat_csv(std::ostream& out, std::span<const ConcatRecord> records);
void write_hyperplane_csv(std::ostream& out,
                          std::span<const HyperplaneRecord> records);
void write_counterexample_csv(std::ostream& out,
                              std::span<const CounterexampleRecord> records);

}  // namespace percolation

#endif  // PERCOLATION_EXPERIMENTS_HPP_
