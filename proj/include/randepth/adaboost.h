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

#ifndef RANDEPTH_ADABOOST_H_
#define RANDEPTH_ADABOOST_H_

#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"
#include "randepth/dataset.h"
#include "randepth/tree.h"

namespace randepth {

// Binary AdaBoost on targets in {0, 1}. The base learner is a classification
// tree (leaf value = class) grown to `TreeConfig::max_depth` by minimising
// weighted misclassification; feature_fraction is ignored.
struct AdaBoostStage {
  RegressionTree classifier;
  double vote_weight = 0.0;
  // Weighted training error of this stage under the weights it was fit on.
  double weighted_error = 0.0;
};

class AdaBoostModel {
 public:
  explicit AdaBoostModel(std::vector<AdaBoostStage> stages);

  // Weighted-vote argmax; ties (including an empty model) go to class 0.
  int Predict(std::span<const double> x) const;
  int Predict(const Dataset& data, std::size_t row) const;

  const std::vector<AdaBoostStage>& stages() const { return stages_; }

 private:
  std::vector<AdaBoostStage> stages_;
};

// log((1 - err) / err). Requires 0 < err < 1.
double AdaBoostVoteWeight(double weighted_error);

// Weighted error used in place of an exact zero so a perfect stage gets a
// large finite vote weight (about 23) before boosting stops.
inline constexpr double kAdaBoostErrorFloor = 1e-10;

// Weights start at 1/N. Stops early when a stage is perfect (err = 0, kept
// with the floored vote weight) or no better than chance (err >= 0.5,
// discarded).
AdaBoostModel FitAdaBoost(const Dataset& data, std::size_t n_rounds,
                          const TreeConfig& stump_config);

// Classification tree minimising sum_i w_i * 1(y_i != leaf class).
RegressionTree GrowWeightedClassifier(const Dataset& data,
                                      std::span<const double> weights,
                                      const TreeConfig& config);

nlohmann::json AdaBoostToJson(const AdaBoostModel& model);
AdaBoostModel AdaBoostFromJson(const nlohmann::json& doc);

}  // namespace randepth

#endif  // RANDEPTH_ADABOOST_H_
