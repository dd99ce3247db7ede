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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "percolation/cli.hpp"

namespace percolation {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "percolation");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("percolation_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                  ->current_test_info()
                                                  ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }
  fs::path dir_;
};

TEST(ContentHash, MatchesGitBlobHash) {
  // `printf 'hello\n' | git hash-object --stdin`
  EXPECT_EQ(content_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(content_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_F(CliTest, SolvePrintsValue) {
  const auto r = run({"solve", "--n", "16", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("v_16(0,0,0) = "), std::string::npos) << r.out;
}

TEST_F(CliTest, SolveDumpsTable) {
  const auto r = run({"solve", "--n", "4", "--dump", path("v.bin"), "--origin", "1,1,1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("v.bin")));
  EXPECT_NE(r.out.find("v_4(1,1,1)"), std::string::npos);
}

TEST_F(CliTest, OracleCheck) {
  const auto r = run({"oracle-check", "--trials", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0 mismatches"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve", "--n", "abc"}).code, 2);
  EXPECT_EQ(run({"solve", "--config", path("missing.cfg")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"counterexample", "--scale", "1", "--out", path("o")}).code, 2);
  EXPECT_EQ(run({"expect", "--k-max", "4", "--out", path("o")}).code, 2);
}

TEST_F(CliTest, HelpDocumentsSchemaCsvAndExitCodes) {
  const auto r = run({"--help"});
  for (const char* needle : {"[game]", "[model]", "[experiment]", "runs.csv",
                             "seed,n,value,min_cone_value,wall_ms", "Exit codes",
                             "summary.json"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  }
}

TEST_F(CliTest, DuplicateKeyIsConfigError) {
  const auto cfg = write("dup.cfg", "[experiment]\nseed = 1\nseed = 2\n");
  const auto r = run({"expect", "--config", cfg, "--out", path("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("duplicate key 'seed'"), std::string::npos) << r.err;
}

TEST_F(CliTest, ConcatCheckNeedsDirection) {
  const auto cfg = write("flat.cfg",
                         "[game]\ndim = 1\nactions = 1 1\nq.0 = 1\n"
                         "[model]\nkind = iid-bernoulli\np = 0.5\n");
  const auto r = run({"concat-check", "--config", cfg, "--seeds", "2", "--out", path("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("direction"), std::string::npos) << r.err;
}

TEST_F(CliTest, ConcatCheckPasses) {
  const auto r = run({"concat-check", "--seeds", "3", "--pairs", "1,2,4", "--out",
                      path("c")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("c/concat.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "seed,m,n,lhs,rhs,holds");
  EXPECT_TRUE(fs::exists(path("c/summary.json")));
}

TEST_F(CliTest, ExpectIsReproducibleAcrossThreadCounts) {
  const std::vector<std::string> base{"expect", "--num-seeds", "8", "--horizons", "4,8,16"};
  auto with = [&](const std::string& out, const std::string& threads) {
    auto args = base;
    args.insert(args.end(), {"--out", path(out), "--threads", threads});
    return run(args).code;
  };
  ASSERT_EQ(with("a", "1"), 0);
  ASSERT_EQ(with("b", "4"), 0);
  ASSERT_EQ(with("c", "0"), 0);
  for (const char* f : {"runs.csv", "convergence.csv"}) {
    EXPECT_EQ(slurp(path("a/") + f), slurp(path("b/") + f)) << f;
    EXPECT_EQ(slurp(path("a/") + f), slurp(path("c/") + f)) << f;
  }
  const std::string a = slurp(path("a/summary.json"));
  const std::string b = slurp(path("b/summary.json"));
  const auto hash = [](const std::string& s) {
    const auto p = s.find("\"content_hash\"");
    return s.substr(p, 60);
  };
  EXPECT_EQ(hash(a), hash(b));
}

TEST_F(CliTest, CounterexamplePlantedExitCode) {
  const auto cfg = write("plants.cfg", "[model]\nkind = squares\nk_max = 6\nrandom_draws = false\n");
  const auto r = run({"counterexample", "--config", cfg, "--scale", "6", "--planted",
                      "--num-seeds", "2", "--out", path("x")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("x/counterexample.csv"));
  EXPECT_NE(csv.find(",6,1,"), std::string::npos) << csv;
}

TEST_F(CliTest, EnvDump) {
  const auto cfg = write("one.cfg",
                         "[model]\nkind = squares\nk_max = 2\nrandom_draws = false\n"
                         "plant.0 = one 1 0 0 0\n");
  const auto r = run({"env-dump", "--config", cfg, "--box", "0:0,-1:1,-1:1", "--out",
                      path("e")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("e/env.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,h,payoff");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
  EXPECT_EQ(csv.find(",0\n"), std::string::npos);  // all nine points covered
  EXPECT_EQ(run({"env-dump", "--box", "0:1,0:1", "--out", path("e")}).code, 2);
}

TEST_F(CliTest, ConcentrateWritesTable) {
  const auto r = run({"concentrate", "--num-seeds", "20", "--n", "8", "--lambdas",
                      "0,0.1", "--out", path("k")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("k/concentration.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,lambda,empirical,bound");
  EXPECT_NE(csv.find("8,0,1,1\n"), std::string::npos) << csv;
}

}  // namespace
}  // namespace percolation
