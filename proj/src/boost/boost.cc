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

#include "randepth/boost.h"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "randepth/error.h"
#include "randepth/sampling.h"
#include "randepth/tree_io.h"

namespace randepth {

void ValidateBoostConfig(const BoostConfig& config) {
  ValidateTreeConfig(config.tree);
  Require(config.learning_rate >= 0.0 && config.learning_rate <= 1.0,
          "BoostConfig: learning_rate must lie in [0, 1]");
  Require(config.obs_fraction >= 0.0 && config.obs_fraction <= 1.0,
          "BoostConfig: obs_fraction must lie in [0, 1]");
  Require(!config.random_depth || config.tree.max_depth >= 1,
          "BoostConfig: random depth needs max_depth >= 1");
}

BoostModel::BoostModel(double initial_value, std::vector<BoostStage> stages,
                       BoostConfig config, FitStats fit_stats)
    : initial_value_(initial_value),
      stages_(std::move(stages)),
      config_(std::move(config)),
      fit_stats_(fit_stats) {
  Require(std::isfinite(initial_value_), "BoostModel: non-finite F_0");
  for (const auto& stage : stages_) {
    Require(std::isfinite(stage.multiplier),
            "BoostModel: non-finite stage multiplier");
  }
}

double BoostModel::Predict(std::span<const double> x) const {
  double f = initial_value_;
  const double nu = config_.learning_rate;
  for (const auto& stage : stages_) {
    f += nu * stage.multiplier * stage.tree.Predict(x);
  }
  return f;
}

double BoostModel::Predict(const Dataset& data, std::size_t row) const {
  double f = initial_value_;
  const double nu = config_.learning_rate;
  for (const auto& stage : stages_) {
    f += nu * stage.multiplier * stage.tree.Predict(data, row);
  }
  return f;
}

std::vector<double> BoostModel::PredictBatch(const Dataset& data) const {
  std::vector<double> out(data.num_rows());
  const auto n = static_cast<std::ptrdiff_t>(data.num_rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = Predict(data, i);
  return out;
}

std::vector<std::vector<double>> BoostModel::StagedPredict(
    const Dataset& data) const {
  std::vector<std::vector<double>> staged;
  staged.reserve(stages_.size() + 1);
  std::vector<double> current(data.num_rows(), initial_value_);
  staged.push_back(current);
  const double nu = config_.learning_rate;
  for (const auto& stage : stages_) {
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
      current[i] += nu * stage.multiplier * stage.tree.Predict(data, i);
    }
    staged.push_back(current);
  }
  return staged;
}

BoostModel FitBoost(const Dataset& data, const BoostConfig& config) {
  ValidateBoostConfig(config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = data.num_rows();
  const auto y = data.target();

  double sum = 0.0;
  for (const double v : y) sum += v;
  const double initial_value = sum / static_cast<double>(n);

  std::vector<double> fitted(n, initial_value);
  std::vector<double> residual(n);
  std::vector<BoostStage> stages;
  stages.reserve(config.n_iterations);
  std::size_t total_splits = 0;
  const RngStream root = RngStream(config.seed).Child("stage");

  for (std::size_t m = 0; m < config.n_iterations; ++m) {
    const RngStream stream = root.Child(m);
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - fitted[i];
    const IndexSample sample =
        DrawSample(n, config.obs_fraction, /*with_replacement=*/false,
                   stream.Child("sample"));
    const int budget = DrawDepthBudget(config.tree.max_depth,
                                       config.random_depth,
                                       stream.Child("depth"));
    BoostStage stage{GrowTree(data, residual, sample.indices, config.tree,
                              budget, stream.Child("grow")),
                     1.0};
    const double step = config.learning_rate * stage.multiplier;
    for (std::size_t i = 0; i < n; ++i) {
      fitted[i] += step * stage.tree.Predict(data, i);
    }
    total_splits += stage.tree.CountSplits();
    stages.push_back(std::move(stage));
  }

  FitStats stats;
  stats.total_splits = total_splits;
  stats.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return BoostModel(initial_value, std::move(stages), config, stats);
}

nlohmann::json BoostConfigToJson(const BoostConfig& config) {
  return {{"n_iterations", config.n_iterations},
          {"learning_rate", config.learning_rate},
          {"obs_fraction", config.obs_fraction},
          {"tree", TreeConfigToJson(config.tree)},
          {"random_depth", config.random_depth},
          {"seed", config.seed}};
}

BoostConfig BoostConfigFromJson(const nlohmann::json& doc) {
  BoostConfig config;
  config.n_iterations = doc.at("n_iterations").get<std::size_t>();
  config.learning_rate = doc.at("learning_rate").get<double>();
  config.obs_fraction = doc.at("obs_fraction").get<double>();
  config.tree = TreeConfigFromJson(doc.at("tree"));
  config.random_depth = doc.at("random_depth").get<bool>();
  config.seed = doc.at("seed").get<std::uint64_t>();
  return config;
}

nlohmann::json BoostToJson(const BoostModel& model) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& stage : model.stages()) {
    stages.push_back({{"multiplier", stage.multiplier},
                      {"tree", TreeToJson(stage.tree)}});
  }
  return {{"type", "boost"},
          {"config", BoostConfigToJson(model.config())},
          {"learning_rate", model.config().learning_rate},
          {"initial_value", model.initial_value()},
          {"fit_stats",
           {{"total_splits", model.fit_stats().total_splits},
            {"wall_seconds", model.fit_stats().wall_seconds}}},
          {"stages", std::move(stages)}};
}

BoostModel BoostFromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("type").get<std::string>() != "boost") {
      throw IoError("model document is not a boosting model");
    }
    std::vector<BoostStage> stages;
    for (const auto& s : doc.at("stages")) {
      stages.push_back(
          {TreeFromJson(s.at("tree")), s.at("multiplier").get<double>()});
    }
    FitStats stats;
    stats.total_splits =
        doc.at("fit_stats").at("total_splits").get<std::size_t>();
    stats.wall_seconds = doc.at("fit_stats").at("wall_seconds").get<double>();
    return BoostModel(doc.at("initial_value").get<double>(), std::move(stages),
                      BoostConfigFromJson(doc.at("config")), stats);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed boosting model: ") + e.what());
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid boosting model: ") + e.what());
  }
}

}  // namespace randepth
