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

#include "randepth/adaboost.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "randepth/error.h"
#include "randepth/tree_io.h"

namespace randepth {
namespace {

struct ClassMass {
  double w0 = 0.0;
  double w1 = 0.0;
  double error() const { return std::min(w0, w1); }
  // Weighted majority, ties to class 0.
  int majority() const { return w1 > w0 ? 1 : 0; }
};

struct WeightedSplit {
  std::size_t feature;
  double threshold;
  double error;
};

class ClassifierGrower {
 public:
  ClassifierGrower(const Dataset& data, std::span<const double> weights,
                   const TreeConfig& config)
      : data_(data), weights_(weights), config_(config) {}

  std::vector<TreeNode> Grow() {
    std::vector<std::size_t> rows(data_.num_rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    rows_ = std::move(rows);
    GrowNode(0, rows_.size(), 0);
    return std::move(nodes_);
  }

 private:
  ClassMass Mass(std::span<const std::size_t> rows) const {
    ClassMass mass;
    for (const std::size_t r : rows) {
      (data_.target()[r] > 0.5 ? mass.w1 : mass.w0) += weights_[r];
    }
    return mass;
  }

  std::optional<WeightedSplit> Best(std::span<const std::size_t> rows,
                                    const ClassMass& parent) const {
    std::optional<WeightedSplit> best;
    const std::size_t n = rows.size();
    for (std::size_t j = 0; j < data_.num_features(); ++j) {
      std::vector<std::size_t> order(rows.begin(), rows.end());
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return data_.feature(a, j) < data_.feature(b, j);
      });
      ClassMass left;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t r = order[i];
        (data_.target()[r] > 0.5 ? left.w1 : left.w0) += weights_[r];
        const std::size_t left_count = i + 1;
        if (left_count < config_.min_leaf_size) continue;
        if (n - left_count < config_.min_leaf_size) break;
        const double lo = data_.feature(r, j);
        const double hi = data_.feature(order[i + 1], j);
        if (!(lo < hi)) continue;
        const ClassMass right{parent.w0 - left.w0, parent.w1 - left.w1};
        const double error = left.error() + std::max(0.0, right.error());
        if (!best || error < best->error) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = WeightedSplit{j, threshold, error};
        }
      }
    }
    return best;
  }

  std::int32_t GrowNode(std::size_t begin, std::size_t end, int depth) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    const std::span<std::size_t> rows(rows_.data() + begin, end - begin);
    const ClassMass mass = Mass(rows);
    std::optional<WeightedSplit> split;
    if (depth < config_.max_depth && rows.size() >= 2 * config_.min_leaf_size &&
        mass.error() > 0.0) {
      split = Best(rows, mass);
      if (split && !(split->error < mass.error())) split.reset();
    }
    if (!split) {
      nodes_[id].value = mass.majority();
      return id;
    }
    const auto middle = std::stable_partition(
        rows.begin(), rows.end(), [&](std::size_t r) {
          return data_.feature(r, split->feature) <= split->threshold;
        });
    const std::size_t mid =
        begin + static_cast<std::size_t>(middle - rows.begin());
    nodes_[id].feature = static_cast<std::int32_t>(split->feature);
    nodes_[id].threshold = split->threshold;
    const std::int32_t left = GrowNode(begin, mid, depth + 1);
    const std::int32_t right = GrowNode(mid, end, depth + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  const Dataset& data_;
  std::span<const double> weights_;
  const TreeConfig& config_;
  std::vector<std::size_t> rows_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

RegressionTree GrowWeightedClassifier(const Dataset& data,
                                      std::span<const double> weights,
                                      const TreeConfig& config) {
  ValidateTreeConfig(config);
  Require(weights.size() == data.num_rows(),
          "GrowWeightedClassifier: one weight per row required");
  ClassifierGrower grower(data, weights, config);
  return RegressionTree(grower.Grow(), config.max_depth);
}

double AdaBoostVoteWeight(double weighted_error) {
  Require(weighted_error > 0.0 && weighted_error < 1.0,
          "AdaBoostVoteWeight: error must lie in (0, 1)");
  return std::log((1.0 - weighted_error) / weighted_error);
}

AdaBoostModel::AdaBoostModel(std::vector<AdaBoostStage> stages)
    : stages_(std::move(stages)) {
  for (const auto& s : stages_) {
    Require(std::isfinite(s.vote_weight), "AdaBoostModel: non-finite vote");
  }
}

int AdaBoostModel::Predict(std::span<const double> x) const {
  double votes[2] = {0.0, 0.0};
  for (const auto& s : stages_) {
    votes[s.classifier.Predict(x) > 0.5 ? 1 : 0] += s.vote_weight;
  }
  return votes[1] > votes[0] ? 1 : 0;
}

int AdaBoostModel::Predict(const Dataset& data, std::size_t row) const {
  double votes[2] = {0.0, 0.0};
  for (const auto& s : stages_) {
    votes[s.classifier.Predict(data, row) > 0.5 ? 1 : 0] += s.vote_weight;
  }
  return votes[1] > votes[0] ? 1 : 0;
}

AdaBoostModel FitAdaBoost(const Dataset& data, std::size_t n_rounds,
                          const TreeConfig& stump_config) {
  Require(n_rounds >= 1, "FitAdaBoost: need at least one round");
  const std::size_t n = data.num_rows();
  bool has0 = false;
  bool has1 = false;
  for (const double y : data.target()) {
    Require(y == 0.0 || y == 1.0, "FitAdaBoost: targets must be 0 or 1");
    (y == 1.0 ? has1 : has0) = true;
  }
  Require(has0 && has1, "FitAdaBoost: both classes must be present");

  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  std::vector<AdaBoostStage> stages;
  for (std::size_t m = 0; m < n_rounds; ++m) {
    RegressionTree classifier =
        GrowWeightedClassifier(data, weights, stump_config);
    std::vector<char> wrong(n);
    double total = 0.0;
    double missed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      wrong[i] = classifier.Predict(data, i) != data.target()[i];
      total += weights[i];
      if (wrong[i]) missed += weights[i];
    }
    const double error = missed / total;
    if (error >= 0.5) break;
    const bool perfect = error == 0.0;
    const double alpha =
        AdaBoostVoteWeight(perfect ? kAdaBoostErrorFloor : error);
    stages.push_back({std::move(classifier), alpha, error});
    if (perfect) break;

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (wrong[i]) weights[i] *= std::exp(alpha);
      norm += weights[i];
    }
    for (auto& w : weights) w /= norm;
  }
  return AdaBoostModel(std::move(stages));
}

nlohmann::json AdaBoostToJson(const AdaBoostModel& model) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : model.stages()) {
    stages.push_back({{"vote_weight", s.vote_weight},
                      {"weighted_error", s.weighted_error},
                      {"tree", TreeToJson(s.classifier)}});
  }
  return {{"type", "adaboost"}, {"stages", std::move(stages)}};
}

AdaBoostModel AdaBoostFromJson(const nlohmann::json& doc) {
  try {
    if (doc.at("type").get<std::string>() != "adaboost") {
      throw IoError("model document is not an AdaBoost model");
    }
    std::vector<AdaBoostStage> stages;
    for (const auto& s : doc.at("stages")) {
      stages.push_back({TreeFromJson(s.at("tree")),
                        s.at("vote_weight").get<double>(),
                        s.at("weighted_error").get<double>()});
    }
    return AdaBoostModel(std::move(stages));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed AdaBoost model: ") + e.what());
  }
}

}  // namespace randepth
