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

// randepth command-line tool: data generation, model fitting and prediction,
// and the two tuning experiments.
//
//   randepth gen --n 1000 --p-noise 10 --seed 3 --out data.csv
//   randepth fit --learner r2f --data data.csv --model model.json
//   randepth predict --model model.json --data test.csv --out pred.csv
//   randepth exp1 --scale 0.1 --out results/
//   randepth exp2 --scale 0.2 --out results/
//   randepth selftest
//
// Exit codes: 0 success, 1 self-test failure, 2 usage or I/O error.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "randepth/adaboost.h"
#include "randepth/boost.h"
#include "randepth/csv.h"
#include "randepth/error.h"
#include "randepth/experiments.h"
#include "randepth/forest.h"
#include "randepth/friedman.h"
#include "randepth/manifest.h"
#include "randepth/rng.h"
#include "randepth/sampling.h"
#include "randepth/tree.h"
#include "randepth/tree_io.h"

namespace {

using namespace randepth;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string FileName(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

void EnsureDirectory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
}

void WriteJson(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in '" + path + "': " + e.what());
  }
}

RunManifest StartManifest(const std::string& command, const json& flags,
                          std::uint64_t seed) {
  RunManifest manifest;
  manifest.command = command;
  manifest.flags = flags;
  manifest.master_seed = seed;
  manifest.started_at = TimestampNow();
  return manifest;
}

void FinishManifest(RunManifest& manifest, const std::string& path) {
  manifest.finished_at = TimestampNow();
  manifest.outputs.push_back(FileName(path));
  manifest.Write(path);
}

// ---------------------------------------------------------------------------
// gen

struct GenFlags {
  std::size_t n = 1000;
  std::size_t p_signal = 10;
  std::size_t p_noise = 0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> spec_seed;
  std::optional<std::uint64_t> data_seed;
  std::string out = "data.csv";
};

int RunGen(const GenFlags& f) {
  const std::uint64_t spec_seed = f.spec_seed.value_or(f.seed);
  const std::uint64_t data_seed = f.data_seed.value_or(f.seed);
  RunManifest manifest = StartManifest(
      "gen",
      {{"n", f.n}, {"p_signal", f.p_signal}, {"p_noise", f.p_noise},
       {"seed", f.seed}, {"spec_seed", spec_seed}, {"data_seed", data_seed},
       {"out", f.out}},
      f.seed);
  if (f.n == 0) throw UsageError("--n must be positive");
  if (f.p_signal == 0) throw UsageError("--p-signal must be positive");

  const friedman::Spec spec =
      friedman::SampleSpecFromSeed(f.p_signal, f.p_noise, spec_seed);
  const friedman::GeneratedData data =
      friedman::GenerateFromSeeds(spec, f.n, spec_seed, data_seed);
  WriteCsvFile(data.dataset, f.out);

  const std::string spec_path = f.out + ".spec.json";
  WriteJson({{"spec_seed", spec_seed},
             {"data_seed", data_seed},
             {"n", f.n},
             {"median_signal", data.median_signal},
             {"spec", friedman::SpecToJson(spec)},
             {"signal", data.signal}},
            spec_path);
  manifest.outputs = {FileName(f.out), FileName(spec_path)};
  FinishManifest(manifest, f.out + ".manifest.json");
  std::cout << "wrote " << f.out << " (" << f.n << " rows, "
            << spec.num_features() << " features)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit / predict

struct FitFlags {
  std::string learner;
  std::string data;
  std::string model = "model.json";
  std::uint64_t seed = 1;
  std::size_t n_trees = 100;
  std::size_t iterations = 100;
  double learning_rate = 0.1;
  std::optional<int> max_depth;
  std::optional<std::size_t> min_leaf;
  std::optional<double> feature_fraction;
  double obs_fraction = 1.0;
  bool no_replacement = false;
};

json FitFlagsToJson(const FitFlags& f) {
  json doc = {{"learner", f.learner},
              {"data", f.data},
              {"model", f.model},
              {"seed", f.seed},
              {"n_trees", f.n_trees},
              {"iterations", f.iterations},
              {"learning_rate", f.learning_rate},
              {"obs_fraction", f.obs_fraction},
              {"no_replacement", f.no_replacement}};
  if (f.max_depth) doc["max_depth"] = *f.max_depth;
  if (f.min_leaf) doc["min_leaf"] = *f.min_leaf;
  if (f.feature_fraction) doc["feature_fraction"] = *f.feature_fraction;
  return doc;
}

bool IsForestLearner(const std::string& l) {
  return l == "bagging" || l == "rf" || l == "r2f";
}
bool IsBoostLearner(const std::string& l) { return l == "mart" || l == "rb"; }

TreeConfig LearnerTreeConfig(const FitFlags& f, std::size_t p) {
  TreeConfig tree;
  if (IsBoostLearner(f.learner)) {
    tree = BoostConfig{}.tree;
  } else if (f.learner == "adaboost") {
    tree = {.max_depth = 1, .min_leaf_size = 1, .feature_fraction = 1.0};
  }
  if (f.learner == "rf" || f.learner == "r2f") {
    // Regression default m_try = p / 3.
    tree.feature_fraction = std::max(1.0, std::round(p / 3.0)) / p;
  }
  if (f.max_depth) tree.max_depth = *f.max_depth;
  if (f.min_leaf) tree.min_leaf_size = *f.min_leaf;
  if (f.feature_fraction) tree.feature_fraction = *f.feature_fraction;
  return tree;
}

int RunFit(const FitFlags& f) {
  RunManifest manifest = StartManifest("fit", FitFlagsToJson(f), f.seed);
  const Dataset data = ReadCsvFile(f.data);
  const TreeConfig tree = LearnerTreeConfig(f, data.num_features());

  json model;
  std::vector<double> fitted(data.num_rows());
  std::size_t total_splits = 0;
  const auto start = std::chrono::steady_clock::now();
  if (f.learner == "cart") {
    ValidateTreeConfig(tree);
    const RegressionTree t =
        GrowTree(data, tree, tree.max_depth, RngStream(f.seed).Child("cart"));
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
      fitted[i] = t.Predict(data, i);
    }
    total_splits = t.CountSplits();
    model = {{"type", "cart"},
             {"config", TreeConfigToJson(tree)},
             {"tree", TreeToJson(t)}};
  } else if (IsForestLearner(f.learner)) {
    ForestConfig config;
    config.n_trees = f.n_trees;
    config.tree = tree;
    config.obs_fraction = f.obs_fraction;
    config.with_replacement = !f.no_replacement;
    config.random_depth = f.learner == "r2f";
    config.seed = f.seed;
    const ForestModel forest = FitForest(data, config);
    fitted = forest.PredictBatch(data);
    total_splits = forest.fit_stats().total_splits;
    model = ForestToJson(forest);
  } else if (IsBoostLearner(f.learner)) {
    BoostConfig config;
    config.n_iterations = f.iterations;
    config.learning_rate = f.learning_rate;
    config.obs_fraction = f.obs_fraction;
    config.tree = tree;
    config.random_depth = f.learner == "rb";
    config.seed = f.seed;
    const BoostModel boost = FitBoost(data, config);
    fitted = boost.PredictBatch(data);
    total_splits = boost.fit_stats().total_splits;
    model = BoostToJson(boost);
  } else if (f.learner == "adaboost") {
    const AdaBoostModel ada = FitAdaBoost(data, f.iterations, tree);
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
      fitted[i] = ada.Predict(data, i);
    }
    for (const auto& stage : ada.stages()) {
      total_splits += stage.classifier.CountSplits();
    }
    model = AdaBoostToJson(ada);
  } else {
    throw UsageError("unknown learner '" + f.learner + "'");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const double train_mse = Mse(fitted, data.target());

  WriteJson(model, f.model);
  manifest.outputs = {FileName(f.model)};
  manifest.extra = {{"train_mse", train_mse},
                    {"total_splits", total_splits},
                    {"fit_seconds", seconds}};
  FinishManifest(manifest, f.model + ".manifest.json");
  std::cout << "learner=" << f.learner << " train_mse=" << FormatReal(train_mse)
            << " total_splits=" << total_splits << " fit_seconds=" << seconds
            << '\n';
  return kExitOk;
}

struct PredictFlags {
  std::string model;
  std::string data;
  std::string out = "predictions.csv";
};

std::vector<double> PredictWith(const json& model, const Dataset& data) {
  const std::string type = model.value("type", "");
  std::vector<double> out(data.num_rows());
  if (type == "cart") {
    const RegressionTree tree = TreeFromJson(model.at("tree"));
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
      out[i] = tree.Predict(data, i);
    }
  } else if (type == "forest") {
    out = ForestFromJson(model).PredictBatch(data);
  } else if (type == "boost") {
    out = BoostFromJson(model).PredictBatch(data);
  } else if (type == "adaboost") {
    const AdaBoostModel ada = AdaBoostFromJson(model);
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
      out[i] = ada.Predict(data, i);
    }
  } else {
    throw IoError("unknown model type '" + type + "'");
  }
  return out;
}

int RunPredict(const PredictFlags& f) {
  RunManifest manifest = StartManifest(
      "predict", {{"model", f.model}, {"data", f.data}, {"out", f.out}}, 0);
  const json model = ReadJson(f.model);
  const Dataset data = ReadCsvFile(f.data);
  std::vector<double> predictions;
  try {
    predictions = PredictWith(model, data);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed model: ") + e.what());
  } catch (const ContractViolation& e) {
    throw IoError(std::string("model does not fit the data: ") + e.what());
  }

  const std::string manifest_path = f.out + ".manifest.json";
  std::ofstream out(f.out);
  if (!out) throw IoError("cannot open '" + f.out + "' for writing");
  out << "row,prediction,manifest\n";
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out << i << ',' << FormatReal(predictions[i]) << ','
        << FileName(manifest_path) << '\n';
  }
  out.close();
  if (!out) throw IoError("write to '" + f.out + "' failed");
  manifest.outputs = {FileName(f.out)};
  FinishManifest(manifest, manifest_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// experiments

std::vector<tuning::LearnerFamily> ParseFamilies(
    const std::vector<std::string>& names) {
  std::vector<tuning::LearnerFamily> out;
  for (const auto& name : names) {
    if (name == "boost") {
      out.push_back(tuning::LearnerFamily::kBoost);
    } else if (name == "forest") {
      out.push_back(tuning::LearnerFamily::kForest);
    } else {
      throw UsageError("unknown family '" + name + "'");
    }
  }
  return out;
}

struct Exp1Flags {
  double scale = 0.1;
  std::uint64_t seed = 1;
  std::string out = "results";
  std::optional<std::size_t> datasets;
  std::optional<std::size_t> n;
  std::vector<std::size_t> p_noise;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  std::optional<long> max_iterations;
  std::optional<long> max_trees;
  std::vector<std::string> families;
};

int RunExp1Command(const Exp1Flags& f) {
  experiments::Exp1Config config = experiments::ScaledExp1(f.scale);
  config.seed = f.seed;
  if (f.datasets) config.n_datasets = *f.datasets;
  if (f.n) config.n = *f.n;
  if (!f.p_noise.empty()) config.p_noise = f.p_noise;
  if (f.generations) config.generations = *f.generations;
  if (f.population) config.population = *f.population;
  if (f.max_iterations) config.max_iterations = *f.max_iterations;
  if (f.max_trees) config.max_trees = *f.max_trees;
  if (!f.families.empty()) config.families = ParseFamilies(f.families);
  if (config.population < 2) throw UsageError("--population must be >= 2");

  json flags = {{"scale", f.scale},
                {"seed", f.seed},
                {"out", f.out},
                {"datasets", config.n_datasets},
                {"n", config.n},
                {"p_noise", config.p_noise},
                {"generations", config.generations},
                {"population", config.population},
                {"max_iterations", config.max_iterations},
                {"max_trees", config.max_trees}};
  RunManifest manifest = StartManifest("exp1", flags, f.seed);
  EnsureDirectory(f.out);
  const std::string manifest_name = "exp1_manifest.json";
  const experiments::Exp1Result result = experiments::RunExp1(config, &std::cerr);
  manifest.outputs = experiments::WriteExp1(result, f.out, manifest_name);
  std::size_t failed = 0;
  for (const auto& cell : result.cells) failed += !cell.error.empty();
  manifest.extra = {{"failed_cells", failed}};
  FinishManifest(manifest,
                 (std::filesystem::path(f.out) / manifest_name).string());
  std::cout << "exp1: " << result.cells.size() << " cells, " << failed
            << " failed; tables in " << f.out << '\n';
  return kExitOk;
}

struct Exp2Flags {
  double scale = 0.2;
  std::uint64_t seed = 1;
  std::string out = "results";
  std::optional<std::size_t> datasets;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> fixed_trees;
  std::vector<std::string> families;
  bool no_hybrid = false;
};

int RunExp2Command(const Exp2Flags& f) {
  experiments::Exp2Config config = experiments::ScaledExp2(f.scale);
  config.seed = f.seed;
  if (f.datasets) config.n_datasets = *f.datasets;
  if (f.n) config.n = *f.n;
  if (f.k) config.k = *f.k;
  if (f.fixed_trees) config.fixed_trees = *f.fixed_trees;
  if (!f.families.empty()) config.families = ParseFamilies(f.families);
  config.hybrid = !f.no_hybrid;

  json flags = {{"scale", f.scale},
                {"seed", f.seed},
                {"out", f.out},
                {"datasets", config.n_datasets},
                {"n", config.n},
                {"k", config.k},
                {"fixed_trees", config.fixed_trees},
                {"hybrid", config.hybrid}};
  RunManifest manifest = StartManifest("exp2", flags, f.seed);
  EnsureDirectory(f.out);
  const std::string manifest_name = "exp2_manifest.json";
  const experiments::Exp2Result result = experiments::RunExp2(config, &std::cerr);
  manifest.outputs = experiments::WriteExp2(result, f.out, manifest_name);
  json ratios = json::object();
  for (const auto family : config.families) {
    if (const auto r = result.MedianRuntimeRatio(family)) {
      ratios[tuning::FamilyName(family)] = *r;
      std::cout << "exp2: median tuning-runtime ratio (" << tuning::FamilyName(family)
                << ") = " << *r << '\n';
    }
  }
  manifest.extra = {{"median_runtime_ratio", ratios}};
  FinishManifest(manifest,
                 (std::filesystem::path(f.out) / manifest_name).string());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-depth tree ensembles: data, models and tuning runs"};
  app.require_subcommand(1);

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a Friedman dataset");
  gen_cmd->add_option("--n", gen.n, "Rows")->capture_default_str();
  gen_cmd->add_option("--p-signal", gen.p_signal, "Signal columns")
      ->capture_default_str();
  gen_cmd->add_option("--p-noise", gen.p_noise, "Pure-noise columns")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Default for both seeds")
      ->capture_default_str();
  gen_cmd->add_option("--spec-seed", gen.spec_seed, "Target-function seed");
  gen_cmd->add_option("--data-seed", gen.data_seed, "Row seed");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->capture_default_str();

  FitFlags fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a model to a CSV dataset");
  fit_cmd->add_option("--learner", fit.learner)
      ->required()
      ->check(CLI::IsMember(
          {"cart", "bagging", "rf", "r2f", "mart", "rb", "adaboost"}));
  fit_cmd->add_option("--data", fit.data, "Training CSV")->required();
  fit_cmd->add_option("--model", fit.model, "Output model JSON")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed)->capture_default_str();
  fit_cmd->add_option("--n-trees", fit.n_trees)->capture_default_str();
  fit_cmd->add_option("--iterations", fit.iterations,
                      "Boosting stages (also AdaBoost rounds)")
      ->capture_default_str();
  fit_cmd->add_option("--learning-rate", fit.learning_rate)
      ->capture_default_str();
  fit_cmd->add_option("--max-depth", fit.max_depth);
  fit_cmd->add_option("--min-leaf", fit.min_leaf);
  fit_cmd->add_option("--feature-fraction", fit.feature_fraction);
  fit_cmd->add_option("--obs-fraction", fit.obs_fraction)->capture_default_str();
  fit_cmd->add_flag("--no-replacement", fit.no_replacement,
                    "Subsample trees without replacement");

  PredictFlags predict;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Predict every row of a CSV dataset");
  predict_cmd->add_option("--model", predict.model)->required();
  predict_cmd->add_option("--data", predict.data)->required();
  predict_cmd->add_option("--out", predict.out)->capture_default_str();

  Exp1Flags exp1;
  CLI::App* exp1_cmd =
      app.add_subcommand("exp1", "NSGA-II comparison of random depth off/on");
  exp1_cmd->add_option("--scale", exp1.scale)
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  exp1_cmd->add_option("--seed", exp1.seed)->capture_default_str();
  exp1_cmd->add_option("--out", exp1.out)->capture_default_str();
  exp1_cmd->add_option("--datasets", exp1.datasets);
  exp1_cmd->add_option("--n", exp1.n);
  exp1_cmd->add_option("--p-noise", exp1.p_noise)->delimiter(',');
  exp1_cmd->add_option("--generations", exp1.generations);
  exp1_cmd->add_option("--population", exp1.population);
  exp1_cmd->add_option("--max-iterations", exp1.max_iterations);
  exp1_cmd->add_option("--max-trees", exp1.max_trees);
  exp1_cmd->add_option("--families", exp1.families)->delimiter(',');

  Exp2Flags exp2;
  CLI::App* exp2_cmd = app.add_subcommand(
      "exp2", "Random-search tuning with off / on / hybrid random depth");
  exp2_cmd->add_option("--scale", exp2.scale)
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  exp2_cmd->add_option("--seed", exp2.seed)->capture_default_str();
  exp2_cmd->add_option("--out", exp2.out)->capture_default_str();
  exp2_cmd->add_option("--datasets", exp2.datasets);
  exp2_cmd->add_option("--n", exp2.n);
  exp2_cmd->add_option("--k", exp2.k, "Random-search draws");
  exp2_cmd->add_option("--fixed-trees", exp2.fixed_trees);
  exp2_cmd->add_option("--families", exp2.families)->delimiter(',');
  exp2_cmd->add_flag("--no-hybrid", exp2.no_hybrid);

  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "Run fast internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return RunGen(gen);
    if (fit_cmd->parsed()) return RunFit(fit);
    if (predict_cmd->parsed()) return RunPredict(predict);
    if (exp1_cmd->parsed()) return RunExp1Command(exp1);
    if (exp2_cmd->parsed()) return RunExp2Command(exp2);
    if (selftest_cmd->parsed()) {
      return experiments::RunSelfTest(std::cout) ? kExitOk : kExitCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
