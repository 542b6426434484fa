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

#include "randepth/tree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "randepth/error.h"

namespace randepth {

void ValidateTreeConfig(const TreeConfig& config) {
  Require(config.max_depth >= 0, "TreeConfig: max_depth must be >= 0");
  Require(config.min_leaf_size >= 1, "TreeConfig: min_leaf_size must be >= 1");
  Require(config.feature_fraction >= 0.0 && config.feature_fraction <= 1.0,
          "TreeConfig: feature_fraction must lie in [0, 1]");
}

std::size_t NumCandidateFeatures(std::size_t num_features, double fraction) {
  const auto scaled = static_cast<std::size_t>(
      std::round(fraction * static_cast<double>(num_features)));
  return std::clamp<std::size_t>(scaled, 1, num_features);
}

RegressionTree::RegressionTree(std::vector<TreeNode> nodes, int depth_drawn)
    : nodes_(std::move(nodes)), depth_drawn_(depth_drawn) {
  Require(!nodes_.empty(), "RegressionTree: no nodes");
  Require(depth_drawn_ >= 0, "RegressionTree: negative depth budget");
  std::vector<int> seen(nodes_.size(), 0);
  std::vector<std::int32_t> stack = {0};
  while (!stack.empty()) {
    const std::int32_t id = stack.back();
    stack.pop_back();
    Require(id >= 0 && static_cast<std::size_t>(id) < nodes_.size(),
            "RegressionTree: child index out of range");
    Require(seen[id]++ == 0, "RegressionTree: node reachable twice");
    const TreeNode& node = nodes_[id];
    if (node.is_leaf()) {
      Require(node.right < 0, "RegressionTree: leaf with one child");
      Require(std::isfinite(node.value), "RegressionTree: non-finite leaf");
      continue;
    }
    Require(node.right >= 0, "RegressionTree: internal node needs two children");
    Require(node.feature >= 0, "RegressionTree: internal node without feature");
    Require(std::isfinite(node.threshold),
            "RegressionTree: non-finite threshold");
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  Require(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }),
          "RegressionTree: unreachable nodes");
}

RegressionTree RegressionTree::Leaf(double value, int depth_drawn) {
  TreeNode leaf;
  leaf.value = value;
  return RegressionTree({leaf}, depth_drawn);
}

double RegressionTree::Predict(std::span<const double> x) const {
  std::int32_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& node = nodes_[id];
    id = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes_[id].value;
}

double RegressionTree::Predict(const Dataset& data, std::size_t row) const {
  std::int32_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& node = nodes_[id];
    id = data.feature(row, node.feature) <= node.threshold ? node.left
                                                            : node.right;
  }
  return nodes_[id].value;
}

std::size_t RegressionTree::LeafCount() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t RegressionTree::CountSplits() const {
  return nodes_.size() - LeafCount();
}

int RegressionTree::Depth() const {
  int deepest = 0;
  std::vector<std::pair<std::int32_t, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, depth);
    if (!nodes_[id].is_leaf()) {
      stack.push_back({nodes_[id].left, depth + 1});
      stack.push_back({nodes_[id].right, depth + 1});
    }
  }
  return deepest;
}

namespace {

class TreeGrower {
 public:
  TreeGrower(const Dataset& data, std::span<const double> response,
             const TreeConfig& config, int depth_budget, const RngStream& rng)
      : data_(data),
        response_(response),
        config_(config),
        depth_budget_(depth_budget),
        engine_(rng.engine()),
        num_candidates_(
            NumCandidateFeatures(data.num_features(), config.feature_fraction)),
        feature_pool_(data.num_features()) {
    std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
  }

  std::vector<TreeNode> Grow(std::vector<std::size_t> rows) {
    rows_ = std::move(rows);
    nodes_.clear();
    GrowNode(0, rows_.size(), 0);
    return std::move(nodes_);
  }

 private:
  // Preorder, left subtree first, so the random draw order is fixed.
  std::int32_t GrowNode(std::size_t begin, std::size_t end, int depth) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    const std::span<std::size_t> rows(rows_.data() + begin, end - begin);

    std::optional<SplitCandidate> split;
    if (depth < depth_budget_ && rows.size() >= 2 * config_.min_leaf_size) {
      const std::vector<std::size_t> candidates = DrawCandidates();
      split = BestSplit(data_, response_, rows, candidates,
                        config_.min_leaf_size);
    }
    if (!split) {
      double sum = 0.0;
      for (const std::size_t r : rows) sum += response_[r];
      nodes_[id].value = sum / static_cast<double>(rows.size());
      return id;
    }

    const auto middle = std::stable_partition(
        rows.begin(), rows.end(), [&](std::size_t r) {
          return data_.feature(r, split->feature) <= split->threshold;
        });
    const std::size_t mid = begin + static_cast<std::size_t>(
                                        middle - rows.begin());
    nodes_[id].feature = static_cast<std::int32_t>(split->feature);
    nodes_[id].threshold = split->threshold;
    const std::int32_t left = GrowNode(begin, mid, depth + 1);
    const std::int32_t right = GrowNode(mid, end, depth + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  std::vector<std::size_t> DrawCandidates() {
    const std::size_t p = feature_pool_.size();
    if (num_candidates_ == p) return feature_pool_;
    std::vector<std::size_t> pool = feature_pool_;
    for (std::size_t i = 0; i < num_candidates_; ++i) {
      std::swap(pool[i], pool[i + UniformIndex(engine_, p - i)]);
    }
    pool.resize(num_candidates_);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  const Dataset& data_;
  std::span<const double> response_;
  const TreeConfig& config_;
  int depth_budget_;
  Engine engine_;
  std::size_t num_candidates_;
  std::vector<std::size_t> feature_pool_;
  std::vector<std::size_t> rows_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

RegressionTree GrowTree(const Dataset& data, std::span<const double> response,
                        std::span<const std::size_t> rows,
                        const TreeConfig& config, int depth_budget,
                        const RngStream& rng) {
  ValidateTreeConfig(config);
  Require(!rows.empty(), "GrowTree: no rows");
  Require(response.size() == data.num_rows(),
          "GrowTree: response length must equal dataset rows");
  Require(depth_budget >= 0 && depth_budget <= config.max_depth,
          "GrowTree: depth budget must lie in [0, max_depth]");
  for (const std::size_t r : rows) {
    Require(r < data.num_rows(), "GrowTree: row index out of range");
  }
  TreeGrower grower(data, response, config, depth_budget, rng);
  return RegressionTree(
      grower.Grow(std::vector<std::size_t>(rows.begin(), rows.end())),
      depth_budget);
}

int DrawDepthBudget(int max_depth, bool random_depth, const RngStream& rng) {
  if (!random_depth) return max_depth;
  Require(max_depth >= 1, "random depth needs max_depth >= 1");
  Engine engine = rng.engine();
  return 1 + static_cast<int>(
                 UniformIndex(engine, static_cast<std::uint64_t>(max_depth)));
}

RegressionTree GrowTree(const Dataset& data, const TreeConfig& config,
                        int depth_budget, const RngStream& rng) {
  std::vector<std::size_t> rows(data.num_rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return GrowTree(data, data.target(), rows, config, depth_budget, rng);
}

}  // namespace randepth
