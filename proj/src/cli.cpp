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

#include "percolation/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "percolation/config.hpp"
#include "percolation/errors.hpp"
#include "percolation/experiments.hpp"
#include "percolation/parallel.hpp"
#include "percolation/value_table_io.hpp"

namespace percolation {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kHelpFooter = R"(
Config file (--config): key = value lines in [game], [model] and [experiment]
sections; '#' starts a comment; duplicate or unknown keys are errors.
  [game]        dim, actions = "|I| |J|", q.<i> = "x y z | x y z | ..." (one
                row per Player 1 action, one cell per Player 2 action),
                direction (optional)
  [model]       kind = iid-bernoulli (p) | iid-table (support.<k> = "a b ; c d",
                probs) | squares (k_max, random_draws, plant.<k> =
                "one|zero scale x y h")
  [experiment]  seed, num_seeds, horizons, lambdas, epsilon, origin, pairs,
                scale, state_budget, catalog_budget, record_cone_min
Without a [game] section the game is Z^3 with I = J = {-1,0,1},
q(i,j) = (i,j,1) and direction (0,0,1). Without a [model] section, expect and
concentrate use iid-bernoulli p = 0.5 and the other commands use squares with
k_max = 10.

CSV outputs (written to --out):
  runs.csv           seed,n,value,min_cone_value,wall_ms (wall_ms only with --timing)
  convergence.csv    n,mean,std,ci95,diff_to_half
  concentration.csv  n,lambda,empirical,bound
  concat.csv         seed,m,n,lhs,rhs,holds
  counterexample.csv seed,scale,kind,center_x,center_y,center_h,dist,horizon,value,bound,holds
  env.csv            x,y,h,payoff
Every experiment also writes summary.json: config echo, results, output
files, the SHA-1 content hash (git blob style) of the canonical config and
arguments, and a metadata block (timestamp, threads) outside the hash.

Exit codes: 0 success, 1 runtime failure, 2 configuration or usage error,
3 a checked inequality failed (oracle-check, concat-check, counterexample
--planted).
)";

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> num_seeds;
  std::optional<double> epsilon;
  std::optional<int> k_max;
  std::string out_dir = ".";
  unsigned threads = 0;
  bool verbose = false;
  bool timing = false;

  std::optional<std::size_t> n;
  std::string origin;
  std::string dump;
  std::size_t trials = 50;
  std::string pairs;
  std::string horizons;
  std::string lambdas;
  std::optional<int> scale;
  bool planted = false;
  bool cone_min = false;
  bool benchmark = false;
  std::string box;
  std::string action = "0,0";
};

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T v{};
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size() ||
        item.empty()) {
      throw ConfigError("cannot parse " + what + " '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty " + what);
  return out;
}

std::string join_csv(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Runner {
 public:
  Runner(std::string sub, const Options& o, std::ostream& out, std::ostream& err)
      : sub_(std::move(sub)), o_(o), out_(out), err_(err) {}

  int run();

 private:
  void load_config();
  void add_arg(const std::string& key, const std::string& value) {
    args_[key] = value;
  }
  std::filesystem::path output(const std::string& name) {
    std::filesystem::create_directories(o_.out_dir);
    const auto path = std::filesystem::path(o_.out_dir) / name;
    written_.push_back(path.string());
    return path;
  }
  template <class Fn>
  void write_file(const std::string& name, Fn&& fn) {
    const auto path = output(name);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    fn(f);
    if (!f) throw Error("write failed for '" + path.string() + "'");
  }
  void write_summary(const Json& results);
  void finish(const std::string& line) {
    out_ << line << '\n';
    for (const auto& p : written_) out_ << "  wrote " << p << '\n';
  }

  int solve_cmd();
  int oracle_cmd();
  int expect_cmd();
  int concentrate_cmd();
  int concat_cmd();
  int counterexample_cmd();
  int env_dump_cmd();

  std::string sub_;
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  ExperimentConfig config_;
  std::map<std::string, std::string> args_;
  std::vector<std::string> written_;
};

void Runner::load_config() {
  ConfigFile file;
  if (!o_.config_path.empty()) file = parse_config(o_.config_path);
  config_ = file.experiment;
  if (!file.has_model) {
    if (sub_ == "expect" || sub_ == "concentrate") {
      config_.model = IidBernoulli{0.5};
    } else {
      config_.model = Squares{};
    }
  }
  if (o_.seed) config_.base_seed = *o_.seed;
  if (o_.num_seeds) config_.num_seeds = *o_.num_seeds;
  if (o_.epsilon) config_.epsilon = *o_.epsilon;
  if (o_.k_max) {
    auto* s = std::get_if<Squares>(&config_.model);
    if (!s) throw ConfigError("--k-max applies only to the squares model");
    s->k_max = *o_.k_max;
  }
  if (!o_.horizons.empty()) {
    config_.horizons = parse_list<std::size_t>(o_.horizons, "horizons");
  }
  if (!o_.lambdas.empty()) config_.lambdas = parse_list<double>(o_.lambdas, "lambdas");
  if (!o_.pairs.empty()) config_.pairs = parse_list<std::size_t>(o_.pairs, "pairs");
  if (o_.scale) config_.scale = *o_.scale;
  if (o_.cone_min) config_.record_cone_min = true;
  if (o_.benchmark) {
    if (file.has_game) throw ConfigError("--benchmark conflicts with a [game] section");
    config_.spec = GameSpec::benchmark();
    add_arg("benchmark", "true");
  }
  if (!o_.origin.empty()) {
    config_.origin = LatticePoint(parse_list<Coord>(o_.origin, "origin"));
  }
  config_.threads = o_.threads;
  validate_config(config_);
}

void Runner::write_summary(const Json& results) {
  const std::string canonical = serialize_config(config_);
  std::string arg_text = "subcommand=" + sub_ + "\n";
  for (const auto& [k, v] : args_) arg_text += k + "=" + v + "\n";
  Json j;
  j["subcommand"] = sub_;
  j["config"] = canonical;
  Json args = Json::object();
  for (const auto& [k, v] : args_) args[k] = v;
  j["arguments"] = args;
  j["content_hash"] = content_hash(canonical + "\n" + arg_text);
  j["results"] = results;
  const auto path = output("summary.json");
  j["outputs"] = written_;
  j["metadata"] = {{"timestamp", timestamp()},
                   {"threads", resolve_threads(config_.threads)}};
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << j.dump(2) << '\n';
}

int Runner::run() {
  if (sub_ == "oracle-check") return oracle_cmd();
  load_config();
  if (sub_ == "solve") return solve_cmd();
  if (sub_ == "expect") return expect_cmd();
  if (sub_ == "concentrate") return concentrate_cmd();
  if (sub_ == "concat-check") return concat_cmd();
  if (sub_ == "counterexample") return counterexample_cmd();
  if (sub_ == "env-dump") return env_dump_cmd();
  throw ConfigError("unknown subcommand '" + sub_ + "'");
}

int Runner::solve_cmd() {
  const std::size_t n = o_.n.value_or(config_.horizons.back());
  if (n == 0) throw ConfigError("--n must be at least 1");
  const LatticePoint origin = config_.start();
  const std::uint64_t seed = config_.base_seed;
  const Environment env = make_environment(config_, seed, n + 1);
  double value = 0.0;
  if (!o_.dump.empty()) {
    const ValueTable table = solve(env, config_.spec, origin, n, config_.solve);
    value = table.value();
    std::filesystem::path path(o_.dump);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + o_.dump + "'");
    write_value_table(f, table);
    written_.push_back(o_.dump);
  } else {
    value = solve_value(env, config_.spec, origin, n, config_.solve);
  }
  finish("v_" + std::to_string(n) + origin.to_string() + " = " +
         format_number(value) + " (seed " + std::to_string(seed) + ", " +
         model_kind_name(config_.model) + ")");
  return kExitOk;
}

int Runner::oracle_cmd() {
  const std::uint64_t seed = o_.seed.value_or(1);
  const auto r = oracle_suite(o_.trials, seed);
  out_ << "oracle-check: " << r.trials << " instances, " << r.mismatches
       << " mismatches, " << r.asymmetric << " maxmin/minmax gaps\n";
  return r.mismatches == 0 && r.asymmetric == 0 ? kExitOk : kExitCheckFailed;
}

int Runner::expect_cmd() {
  add_arg("horizons", join_csv(config_.horizons));
  const auto report = estimate_expected_value(config_);
  if (o_.verbose) {
    for (const auto& r : report.records) {
      err_ << "seed " << r.seed << " n " << r.n << ": "
           << (r.value ? format_number(*r.value) : r.error) << '\n';
    }
  }
  write_file("runs.csv", [&](std::ostream& f) {
    write_runs_csv(f, report.records, o_.timing);
  });
  write_file("convergence.csv",
             [&](std::ostream& f) { write_convergence_csv(f, report); });
  const auto inv = difference_inversions(report);
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row{{"n", r.n}, {"count", r.count}, {"mean", r.mean}, {"std", r.std},
             {"ci95", r.ci95}};
    row["diff_to_half"] = r.diff_to_half ? Json(*r.diff_to_half) : Json();
    rows.push_back(row);
  }
  Json results{{"rows", rows},
               {"inversions", inv.total},
               {"unexplained_inversions", inv.unexplained}};
  results["slope"] = report.slope ? Json(*report.slope) : Json();
  write_summary(results);
  const auto& last = report.rows.back();
  std::string line = "expect: n=" + std::to_string(last.n) + " mean " +
                     format_number(last.mean) + " +/- " + format_number(last.ci95) +
                     " over " + std::to_string(last.count) + " seeds";
  if (report.slope) line += ", log-log slope " + format_number(*report.slope);
  finish(line);
  return kExitOk;
}

int Runner::concentrate_cmd() {
  add_arg("horizons", join_csv(config_.horizons));
  std::string lambdas;
  for (double l : config_.lambdas) lambdas += (lambdas.empty() ? "" : ",") + format_number(l);
  add_arg("lambdas", lambdas);
  const auto report = estimate_expected_value(config_);
  const double norm = Environment(config_.model, config_.base_seed).sup_norm();
  const auto points =
      concentration_from_runs(report.records, config_.horizons, config_.lambdas, norm);
  write_file("runs.csv", [&](std::ostream& f) {
    write_runs_csv(f, report.records, o_.timing);
  });
  write_file("concentration.csv",
             [&](std::ostream& f) { write_concentration_csv(f, points); });
  std::size_t flagged = 0;
  Json pts = Json::array();
  for (const auto& p : points) {
    flagged += p.flagged;
    pts.push_back({{"n", p.n}, {"lambda", p.lambda}, {"empirical", p.empirical},
                   {"bound", p.bound}, {"samples", p.samples}, {"flagged", p.flagged}});
  }
  write_summary({{"points", pts}, {"flagged", flagged}});
  finish("concentrate: " + std::to_string(points.size()) + " (n, lambda) points, " +
         std::to_string(flagged) + " above bound + 3 sigma");
  return kExitOk;
}

int Runner::concat_cmd() {
  if (!config_.spec.direction()) {
    throw ConfigError(
        "concat-check requires an oriented game: add 'direction' to [game]");
  }
  if (!validate_orientation(config_.spec)) {
    throw ConfigError("concat-check: the game is not oriented along its direction");
  }
  add_arg("pairs", join_csv(config_.pairs));
  const auto records = concatenation_sweep(config_);
  write_file("concat.csv", [&](std::ostream& f) { write_concat_csv(f, records); });
  std::size_t failures = 0;
  for (const auto& r : records) {
    if (!r.result.holds) {
      ++failures;
      if (o_.verbose) {
        err_ << "violation: seed " << r.seed << " m " << r.m << " n " << r.n
             << " lhs " << format_number(r.result.lhs) << " rhs "
             << format_number(r.result.rhs) << '\n';
      }
    }
  }
  write_summary({{"checks", records.size()}, {"violations", failures}});
  finish("concat-check: " + std::to_string(records.size()) + " checks over " +
         std::to_string(config_.num_seeds) + " seeds, " +
         std::to_string(failures) + " violations");
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

int Runner::counterexample_cmd() {
  const auto* sq = std::get_if<Squares>(&config_.model);
  if (!sq) throw ConfigError("counterexample requires the squares model");
  if (config_.spec.dim() != 3) throw ConfigError("counterexample requires dim 3");
  if (config_.scale < 2 || config_.scale > sq->k_max) {
    throw ConfigError("--scale must lie in [2, k_max]");
  }
  add_arg("scale", std::to_string(config_.scale));
  add_arg("planted", o_.planted ? "true" : "false");
  const auto report = counterexample_run(config_, config_.scale, o_.planted);
  write_file("counterexample.csv", [&](std::ostream& f) {
    write_counterexample_csv(f, report.records);
  });
  std::size_t failures = 0;
  for (const auto& r : report.records) failures += !r.holds;
  write_summary({{"records", report.records.size()},
                 {"violations", failures},
                 {"missing_one", report.missing_one},
                 {"missing_zero", report.missing_zero}});
  finish("counterexample: scale " + std::to_string(config_.scale) + ", " +
         std::to_string(report.records.size()) + " witnesses, " +
         std::to_string(failures) + " violations, missing 1/0 squares " +
         std::to_string(report.missing_one) + "/" +
         std::to_string(report.missing_zero));
  return o_.planted && failures > 0 ? kExitCheckFailed : kExitOk;
}

int Runner::env_dump_cmd() {
  if (config_.spec.dim() != 3) throw ConfigError("env-dump requires dim 3");
  if (o_.box.empty()) throw ConfigError("env-dump needs --box x0:x1,y0:y1,h0:h1");
  std::vector<Coord> lo, hi;
  std::stringstream ss(o_.box);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ConfigError("bad --box range '" + part + "'");
    lo.push_back(parse_list<Coord>(part.substr(0, colon), "--box")[0]);
    hi.push_back(parse_list<Coord>(part.substr(colon + 1), "--box")[0]);
  }
  if (lo.size() != 3) throw ConfigError("--box needs three ranges");
  for (std::size_t k = 0; k < 3; ++k) {
    if (lo[k] > hi[k]) throw ConfigError("--box range is empty");
  }
  const auto act = parse_list<std::size_t>(o_.action, "--action");
  if (act.size() != 2 || act[0] >= config_.spec.num_actions_p1() ||
      act[1] >= config_.spec.num_actions_p2()) {
    throw ConfigError("--action must be 'i,j' within the action sets");
  }
  const Box box(lo, hi);
  add_arg("box", o_.box);
  add_arg("action", o_.action);
  const std::optional<Box> region =
      std::holds_alternative<Squares>(config_.model) ? std::optional<Box>(box)
                                                     : std::nullopt;
  const Environment env(config_.model, config_.base_seed, region,
                        config_.catalog_budget);
  double sum = 0.0;
  write_file("env.csv", [&](std::ostream& f) {
    f << "x,y,h,payoff\n";
    for_each_point(box, [&](std::span<const Coord> z, std::size_t) {
      const double g = env.payoff(z, act[0], act[1]);
      sum += g;
      f << z[0] << ',' << z[1] << ',' << z[2] << ',' << format_number(g) << '\n';
    });
  });
  write_summary({{"points", box.volume()},
                 {"mean_payoff", sum / static_cast<double>(box.volume())}});
  finish("env-dump: " + std::to_string(box.volume()) + " points, mean payoff " +
         format_number(sum / static_cast<double>(box.volume())));
  return kExitOk;
}

}  // namespace

std::string content_hash(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, header.data(), header.size()) != 1 ||
      EVP_DigestUpdate(ctx, content.data(), content.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("SHA-1 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[k]);
    hex += buf;
  }
  return hex;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact solver and experiments for percolation games", "percolation"};
  app.footer(kHelpFooter);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--config", o.config_path, "Config file")->check(CLI::ExistingFile);
    s->add_option("--seed", o.seed, "Base seed (environment seed for solve, env-dump)");
    s->add_option("--num-seeds,--seeds", o.num_seeds, "Number of seeds");
    s->add_option("--epsilon", o.epsilon, "Epsilon in (0, 1)");
    s->add_option("--k-max", o.k_max, "Largest square scale (squares model)");
    s->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    s->add_option("--threads", o.threads, "Worker threads, 0 = all cores")
        ->capture_default_str();
    s->add_flag("--verbose,-v", o.verbose, "Per-run diagnostics on stderr");
    s->add_flag("--timing", o.timing, "Fill the wall_ms column of runs.csv");
  };

  auto* solve = app.add_subcommand("solve", "Solve v_n(origin) for one seed");
  common(solve);
  solve->add_option("--n", o.n, "Horizon (default: largest configured horizon)");
  solve->add_option("--origin", o.origin, "Initial state, e.g. 0,0,0");
  solve->add_option("--dump", o.dump, "Write the value table to this file");

  auto* oracle = app.add_subcommand("oracle-check",
                                    "Compare the solver with brute-force enumeration");
  oracle->add_option("--trials", o.trials, "Random instances")->capture_default_str();
  oracle->add_option("--seed", o.seed, "Base seed");

  auto* expect = app.add_subcommand("expect", "Estimate E[v_n] across horizons");
  common(expect);
  expect->add_option("--horizons", o.horizons, "Comma-separated horizons");
  expect->add_option("--origin", o.origin, "Initial state");
  expect->add_flag("--cone-min", o.cone_min, "Also record min v_n over the cone");
  expect->add_flag("--benchmark", o.benchmark,
                   "Exploratory: non-oriented Z^2 up/down vs left/right game");

  auto* conc = app.add_subcommand("concentrate", "Empirical deviation frequencies");
  common(conc);
  conc->add_option("--horizons,--n", o.horizons, "Comma-separated horizons");
  conc->add_option("--lambdas", o.lambdas, "Comma-separated deviation levels");

  auto* concat = app.add_subcommand("concat-check", "Concatenation inequality sweep");
  common(concat);
  concat->add_option("--pairs", o.pairs, "Comma-separated lengths, e.g. 1,2,4,8,16");

  auto* counter = app.add_subcommand("counterexample",
                                     "Square-witness bounds on the squares field");
  common(counter);
  counter->add_option("--scale", o.scale, "Witness square scale j");
  counter->add_flag("--planted", o.planted, "Plant one square of each kind per seed");

  auto* dump = app.add_subcommand("env-dump", "Write payoffs over a box");
  common(dump);
  dump->add_option("--box", o.box, "x0:x1,y0:y1,h0:h1")->required();
  dump->add_option("--action", o.action, "Action pair i,j")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    Runner runner(sub, o, out, err);
    return runner.run();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ModelError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OrientationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_cli(int argc, const char* const* argv) {
  return run_cli(argc, argv, std::cout, std::cerr);
}

}  // namespace percolation
