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

#ifndef RANDEPTH_BOOST_H_
#define RANDEPTH_BOOST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "randepth/dataset.h"
#include "randepth/forest.h"
#include "randepth/tree.h"

namespace randepth {

// Least-squares gradient boosting (MART). With random_depth set, every
// stage's depth budget is drawn from U{1..tree.max_depth} (Random Boost).
struct BoostConfig {
  std::size_t n_iterations = 100;
  double learning_rate = 0.1;
  // Per-stage row subsample, drawn without replacement.
  double obs_fraction = 1.0;
  TreeConfig tree{.max_depth = 3, .min_leaf_size = 1, .feature_fraction = 1.0};
  bool random_depth = false;
  std::uint64_t seed = 0;
};

void ValidateBoostConfig(const BoostConfig& config);

struct BoostStage {
  RegressionTree tree;
  // Line-search step. Leaf means already minimise squared loss on the
  // residuals, so this is 1 for every stage fitted here.
  double multiplier = 1.0;
};

class BoostModel {
 public:
  BoostModel(double initial_value, std::vector<BoostStage> stages,
             BoostConfig config, FitStats fit_stats);

  // F_0 + sum_m nu * alpha_m * tree_m(x), accumulated stage by stage.
  double Predict(std::span<const double> x) const;
  double Predict(const Dataset& data, std::size_t row) const;
  std::vector<double> PredictBatch(const Dataset& data) const;
  // Entry m holds the predictions after m stages (m = 0..M).
  std::vector<std::vector<double>> StagedPredict(const Dataset& data) const;

  double initial_value() const { return initial_value_; }
  const std::vector<BoostStage>& stages() const { return stages_; }
  const BoostConfig& config() const { return config_; }
  const FitStats& fit_stats() const { return fit_stats_; }

 private:
  double initial_value_;
  std::vector<BoostStage> stages_;
  BoostConfig config_;
  FitStats fit_stats_;
};

// Stage m draws its subsample, depth budget and split candidates from
// sub-streams of (seed, "stage", m). Residuals are taken on all rows; the
// stage tree sees only the subsample.
BoostModel FitBoost(const Dataset& data, const BoostConfig& config);

nlohmann::json BoostConfigToJson(const BoostConfig& config);
BoostConfig BoostConfigFromJson(const nlohmann::json& doc);
nlohmann::json BoostToJson(const BoostModel& model);
BoostModel BoostFromJson(const nlohmann::json& doc);

}  // namespace randepth

#endif  // RANDEPTH_BOOST_H_
