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

#include "randepth/forest.h"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "randepth/error.h"
#include "randepth/sampling.h"
#include "randepth/tree_io.h"

namespace randepth {
namespace {

using Clock = std::chrono::steady_clock;

RegressionTree FitOneTree(const Dataset& data, const ForestConfig& config,
                          std::size_t b) {
  const RngStream stream = RngStream(config.seed).Child("tree", b);
  const IndexSample sample =
      DrawSample(data.num_rows(), config.obs_fraction,
                 config.with_replacement, stream.Child("sample"));
  const int budget = DrawDepthBudget(config.tree.max_depth,
                                     config.random_depth,
                                     stream.Child("depth"));
  return GrowTree(data, data.target(), sample.indices, config.tree, budget,
                  stream.Child("grow"));
}

FitStats Summarize(const std::vector<RegressionTree>& trees,
                   Clock::time_point start) {
  FitStats stats;
  for (const auto& tree : trees) stats.total_splits += tree.CountSplits();
  stats.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return stats;
}

}  // namespace

void ValidateForestConfig(const ForestConfig& config) {
  ValidateTreeConfig(config.tree);
  Require(config.n_trees >= 1, "ForestConfig: n_trees must be >= 1");
  Require(config.obs_fraction >= 0.0 && config.obs_fraction <= 1.0,
          "ForestConfig: obs_fraction must lie in [0, 1]");
  Require(!config.random_depth || config.tree.max_depth >= 1,
          "ForestConfig: random depth needs max_depth >= 1");
}

ForestModel::ForestModel(std::vector<RegressionTree> trees,
                         ForestConfig config, FitStats fit_stats)
    : trees_(std::move(trees)),
      config_(std::move(config)),
      fit_stats_(fit_stats) {
  Require(!trees_.empty(), "ForestModel: no trees");
}

double ForestModel::Predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.Predict(x);
  return sum / static_cast<double>(trees_.size());
}

double ForestModel::Predict(const Dataset& data, std::size_t row) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.Predict(data, row);
  return sum / static_cast<double>(trees_.size());
}

std::vector<double> ForestModel::PredictBatch(const Dataset& data) const {
  std::vector<double> out(data.num_rows());
  const auto n = static_cast<std::ptrdiff_t>(data.num_rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = Predict(data, i);
  return out;
}

std::vector<double> ForestModel::PredictBatchSerial(const Dataset& data) const {
  std::vector<double> out(data.num_rows());
  for (std::size_t i = 0; i < data.num_rows(); ++i) out[i] = Predict(data, i);
  return out;
}

ForestModel FitForest(const Dataset& data, const ForestConfig& config) {
  ValidateForestConfig(config);
  const auto start = Clock::now();
  std::vector<RegressionTree> trees(config.n_trees);
  const auto n_trees = static_cast<std::ptrdiff_t>(config.n_trees);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < n_trees; ++b) {
    trees[b] = FitOneTree(data, config, static_cast<std::size_t>(b));
  }
  FitStats stats = Summarize(trees, start);
  return ForestModel(std::move(trees), config, stats);
}

ForestModel FitForestSerial(const Dataset& data, const ForestConfig& config) {
  ValidateForestConfig(config);
  const auto start = Clock::now();
  std::vector<RegressionTree> trees;
  trees.reserve(config.n_trees);
  for (std::size_t b = 0; b < config.n_trees; ++b) {
    trees.push_back(FitOneTree(data, config, b));
  }
  FitStats stats = Summarize(trees, start);
  return ForestModel(std::move(trees), config, stats);
}

double ExpectedRelativeSplits(int max_depth) {
  Require(max_depth >= 1, "ExpectedRelativeSplits: d_max must be >= 1");
  // (2/d)(1 - 2^-d) as one division of exact integers (up to d = 52), so
  // the result is correctly rounded.
  const double d = static_cast<double>(max_depth);
  const double leaves = std::ldexp(1.0, max_depth);
  return (2.0 * leaves - 2.0) / (d * leaves);
}

nlohmann::json ForestConfigToJson(const ForestConfig& config) {
  return {{"n_trees", config.n_trees},
          {"tree", TreeConfigToJson(config.tree)},
          {"obs_fraction", config.obs_fraction},
          {"with_replacement", config.with_replacement},
          {"random_depth", config.random_depth},
          {"seed", config.seed}};
}

ForestConfig ForestConfigFromJson(const nlohmann::json& doc) {
  ForestConfig config;
  config.n_trees = doc.at("n_trees").get<std::size_t>();
  config.tree = TreeConfigFromJson(doc.at("tree"));
  config.obs_fraction = doc.at("obs_fraction").get<double>();
  config.with_replacement = doc.at("with_replacement").get<bool>();
  config.random_depth = doc.at("random_depth").get<bool>();
  config.seed = doc.at("seed").get<std::uint64_t>();
  return config;
}

nlohmann::json ForestToJson(const ForestModel& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : model.trees()) trees.push_back(TreeToJson(tree));
  return {{"type", "forest"},
          {"config", ForestConfigToJson(model.config())},
          {"fit_stats",
           {{"total_splits", model.fit_stats().total_splits},
            {"wall_seconds", model.fit_stats().wall_seconds}}},
          {"trees", std::move(trees)}};
}

ForestModel ForestFromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("type").get<std::string>() != "forest") {
      throw IoError("model document is not a forest");
    }
    std::vector<RegressionTree> trees;
    for (const auto& t : doc.at("trees")) trees.push_back(TreeFromJson(t));
    FitStats stats;
    stats.total_splits =
        doc.at("fit_stats").at("total_splits").get<std::size_t>();
    stats.wall_seconds = doc.at("fit_stats").at("wall_seconds").get<double>();
    return ForestModel(std::move(trees), ForestConfigFromJson(doc.at("config")),
                       stats);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed forest model: ") + e.what());
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid forest model: ") + e.what());
  }
}

}  // namespace randepth
