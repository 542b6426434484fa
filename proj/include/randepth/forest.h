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

#ifndef RANDEPTH_FOREST_H_
#define RANDEPTH_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "randepth/dataset.h"
#include "randepth/tree.h"

namespace randepth {

// Bagging, Random Forest and Random^2 Forest are all this configuration:
//   bagging: obs_fraction = 1, with_replacement, feature_fraction = 1
//   RF:      as bagging with feature_fraction < 1 (m_try per split)
//   R2F:     RF with random_depth, each tree's budget ~ U{1..max_depth}
struct ForestConfig {
  std::size_t n_trees = 100;
  TreeConfig tree;
  double obs_fraction = 1.0;
  bool with_replacement = true;
  bool random_depth = false;
  std::uint64_t seed = 0;
};

void ValidateForestConfig(const ForestConfig& config);

struct FitStats {
  std::size_t total_splits = 0;
  double wall_seconds = 0.0;
};

class ForestModel {
 public:
  ForestModel(std::vector<RegressionTree> trees, ForestConfig config,
              FitStats fit_stats);

  // Mean of member-tree predictions.
  double Predict(std::span<const double> x) const;
  double Predict(const Dataset& data, std::size_t row) const;
  // One prediction per row; rows are split across OpenMP threads.
  std::vector<double> PredictBatch(const Dataset& data) const;
  std::vector<double> PredictBatchSerial(const Dataset& data) const;

  const std::vector<RegressionTree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }
  const FitStats& fit_stats() const { return fit_stats_; }

 private:
  std::vector<RegressionTree> trees_;
  ForestConfig config_;
  FitStats fit_stats_;
};

// Tree b draws its row sample, depth budget and split candidates from
// sub-streams of (seed, "tree", b), so the ensemble is independent of thread
// count and any prefix of trees is reproduced by a smaller n_trees.
ForestModel FitForest(const Dataset& data, const ForestConfig& config);
ForestModel FitForestSerial(const Dataset& data, const ForestConfig& config);

// Closed-form ratio of expected splits with uniform random depth on
// {1..d_max} to splits at fixed depth d_max: (2/d_max) * (1 - 2^-d_max).
double ExpectedRelativeSplits(int max_depth);

nlohmann::json ForestConfigToJson(const ForestConfig& config);
ForestConfig ForestConfigFromJson(const nlohmann::json& doc);
nlohmann::json ForestToJson(const ForestModel& model);
ForestModel ForestFromJson(const nlohmann::json& doc);

}  // namespace randepth

#endif  // RANDEPTH_FOREST_H_
