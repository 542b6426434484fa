/*
 * Copyright 2026 The randepth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Drives the randepth binary end to end.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "randepth/csv.h"

namespace randepth {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(RANDEPTH_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<double> Predictions(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<double> out;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    out.push_back(ParseReal(line.substr(a + 1, b - a - 1)));
  }
  return out;
}

// Value of `key=` in the fit summary line.
std::string Field(const std::string& out, const std::string& key) {
  const auto at = out.find(key + "=");
  if (at == std::string::npos) return "";
  const auto start = at + key.size() + 1;
  return out.substr(start, out.find_first_of(" \n", start) - start);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("randepth_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(RunCli("gen --n 100 --p-signal 10 --seed 4 --out " + P("a.csv")).exit_code, 0);
  ASSERT_EQ(RunCli("gen --n 100 --p-signal 10 --seed 4 --out " + P("b.csv")).exit_code, 0);
  EXPECT_EQ(Slurp(P("a.csv")), Slurp(P("b.csv")));
  EXPECT_EQ(Slurp(P("a.csv.spec.json")), Slurp(P("b.csv.spec.json")));
  const auto manifest = nlohmann::json::parse(Slurp(P("a.csv.manifest.json")));
  EXPECT_EQ(manifest.at("command"), "gen");
  EXPECT_EQ(manifest.at("flags").at("spec_seed"), 4);
  const auto sidecar = nlohmann::json::parse(Slurp(P("a.csv.spec.json")));
  EXPECT_EQ(sidecar.at("signal").size(), 100u);
  EXPECT_EQ(sidecar.at("spec").at("terms").size(), 10u);
}

TEST_F(Cli, GenReplaysFromManifestSeeds) {
  ASSERT_EQ(RunCli("gen --n 50 --spec-seed 7 --data-seed 9 --out " + P("a.csv")).exit_code, 0);
  const auto flags =
      nlohmann::json::parse(Slurp(P("a.csv.manifest.json"))).at("flags");
  const std::string replay =
      "gen --n " + flags.at("n").dump() + " --p-signal " +
      flags.at("p_signal").dump() + " --p-noise " + flags.at("p_noise").dump() +
      " --spec-seed " + flags.at("spec_seed").dump() + " --data-seed " +
      flags.at("data_seed").dump() + " --out " + P("b.csv");
  ASSERT_EQ(RunCli(replay).exit_code, 0);
  EXPECT_EQ(Slurp(P("a.csv")), Slurp(P("b.csv")));
}

TEST_F(Cli, GenNoiseColumnsAndSingleRow) {
  ASSERT_EQ(RunCli("gen --n 1 --p-noise 20 --out " + P("a.csv")).exit_code, 0);
  const Dataset d = ReadCsvFile(P("a.csv"));
  EXPECT_EQ(d.num_features(), 30u);
  EXPECT_EQ(d.num_rows(), 1u);
}

TEST_F(Cli, UsageAndIoErrorsExitTwo) {
  EXPECT_EQ(RunCli("gen --out /nonexistent/dir/a.csv").exit_code, 2);
  EXPECT_EQ(RunCli("").exit_code, 2);
  EXPECT_EQ(RunCli("gen --n abc").exit_code, 2);
  ASSERT_EQ(RunCli("gen --n 20 --out " + P("d.csv")).exit_code, 0);
  EXPECT_EQ(RunCli("fit --learner xgb --data " + P("d.csv")).exit_code, 2);
  std::ofstream(P("bad.csv")) << "x1,y\n1,2\n3\n";
  EXPECT_EQ(RunCli("fit --learner cart --data " + P("bad.csv")).exit_code, 2);
  EXPECT_EQ(RunCli("fit --learner cart --data " + P("missing.csv")).exit_code, 2);
  std::ofstream(P("bad.json")) << "{not json";
  EXPECT_EQ(RunCli("predict --model " + P("bad.json") + " --data " + P("d.csv") +
                " --out " + P("p.csv"))
                .exit_code,
            2);
}

TEST_F(Cli, SingleTreeForestMatchesCart) {
  ASSERT_EQ(RunCli("gen --n 300 --p-signal 4 --out " + P("d.csv")).exit_code, 0);
  ASSERT_EQ(RunCli("fit --learner cart --data " + P("d.csv") + " --model " +
                P("cart.json"))
                .exit_code,
            0);
  ASSERT_EQ(RunCli("fit --learner rf --n-trees 1 --obs-fraction 1 "
                "--no-replacement --feature-fraction 1 --data " +
                P("d.csv") + " --model " + P("rf.json"))
                .exit_code,
            0);
  for (const char* m : {"cart", "rf"}) {
    ASSERT_EQ(RunCli(std::string("predict --model ") + P(std::string(m) + ".json") +
                  " --data " + P("d.csv") + " --out " + P(std::string(m) + ".csv"))
                  .exit_code,
              0);
  }
  const auto a = Predictions(P("cart.csv"));
  EXPECT_EQ(a.size(), 300u);
  EXPECT_EQ(a, Predictions(P("rf.csv")));
}

TEST_F(Cli, MartWithoutStagesPredictsTheMean) {
  ASSERT_EQ(RunCli("gen --n 80 --out " + P("d.csv")).exit_code, 0);
  ASSERT_EQ(RunCli("fit --learner mart --iterations 0 --data " + P("d.csv") +
                " --model " + P("m.json"))
                .exit_code,
            0);
  ASSERT_EQ(RunCli("predict --model " + P("m.json") + " --data " + P("d.csv") +
                " --out " + P("p.csv"))
                .exit_code,
            0);
  const Dataset d = ReadCsvFile(P("d.csv"));
  const double mean =
      std::accumulate(d.target().begin(), d.target().end(), 0.0) / 80;
  for (double p : Predictions(P("p.csv"))) EXPECT_DOUBLE_EQ(p, mean);
  const std::string first_row = Slurp(P("p.csv")).substr(0, 64);
  EXPECT_NE(first_row.find("row,prediction,manifest"), std::string::npos);
}

TEST_F(Cli, RandomDepthForestReportsFewerSplits) {
  ASSERT_EQ(RunCli("gen --n 2000 --out " + P("d.csv")).exit_code, 0);
  const auto rf = RunCli("fit --learner rf --max-depth 4 --n-trees 40 --seed 3 "
                      "--data " + P("d.csv") + " --model " + P("rf.json"));
  const auto r2f = RunCli("fit --learner r2f --max-depth 4 --n-trees 40 --seed 3 "
                       "--data " + P("d.csv") + " --model " + P("r2f.json"));
  ASSERT_EQ(rf.exit_code, 0) << rf.out;
  ASSERT_EQ(r2f.exit_code, 0) << r2f.out;
  EXPECT_LT(std::stoul(Field(r2f.out, "total_splits")),
            std::stoul(Field(rf.out, "total_splits")));
  EXPECT_FALSE(Field(rf.out, "train_mse").empty());
  EXPECT_FALSE(Field(rf.out, "fit_seconds").empty());
}

TEST_F(Cli, EveryLearnerRoundTrips) {
  ASSERT_EQ(RunCli("gen --n 200 --p-signal 3 --out " + P("d.csv")).exit_code, 0);
  for (const char* l : {"cart", "bagging", "rf", "r2f", "mart", "rb"}) {
    const std::string model = P(std::string(l) + ".json");
    ASSERT_EQ(RunCli(std::string("fit --learner ") + l + " --n-trees 5 "
                  "--iterations 5 --data " + P("d.csv") + " --model " + model)
                  .exit_code,
              0)
        << l;
    ASSERT_EQ(RunCli("predict --model " + model + " --data " + P("d.csv") +
                  " --out " + P("p.csv"))
                  .exit_code,
              0)
        << l;
    EXPECT_EQ(Predictions(P("p.csv")).size(), 200u);
  }
  std::ofstream(P("c.csv")) << "x1,y\n1,0\n2,0\n3,1\n4,1\n";
  ASSERT_EQ(RunCli("fit --learner adaboost --data " + P("c.csv") + " --model " +
                P("a.json"))
                .exit_code,
            0);
  ASSERT_EQ(RunCli("predict --model " + P("a.json") + " --data " + P("c.csv") +
                " --out " + P("p.csv"))
                .exit_code,
            0);
  EXPECT_EQ(Predictions(P("p.csv")), (std::vector<double>{0, 0, 1, 1}));
}

TEST_F(Cli, SelfTest) {
  const auto r = RunCli("selftest");
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST_F(Cli, Exp1SmokeRun) {
  const auto r = RunCli("exp1 --n 150 --datasets 1 --p-noise 0,2 --generations 1 "
                     "--population 4 --max-iterations 5 --max-trees 5 --out " +
                     P("out"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  for (const char* f : {"exp1_candidates.csv", "exp1_fronts.csv",
                        "exp1_best_mse_difference_boost.csv",
                        "exp1_best_mse_difference_forest.csv",
                        "exp1_manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  const auto manifest =
      nlohmann::json::parse(Slurp(dir_ / "out" / "exp1_manifest.json"));
  EXPECT_EQ(manifest.at("outputs").size(), 5u);
}

TEST_F(Cli, Exp2HybridOnlyForForests) {
  const auto r = RunCli("exp2 --n 150 --datasets 1 --k 2 --fixed-trees 5 --out " +
                     P("out"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const std::string outcomes = Slurp(dir_ / "out" / "exp2_outcomes.csv");
  std::istringstream lines(outcomes);
  std::string line;
  int hybrid = 0;
  while (std::getline(lines, line)) {
    if (line.find(",hybrid,") != std::string::npos) {
      ++hybrid;
      EXPECT_NE(line.find(",forest,"), std::string::npos);
    }
  }
  EXPECT_EQ(hybrid, 1);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "exp2_summary.csv"));
}

}  // namespace
}  // namespace randepth
