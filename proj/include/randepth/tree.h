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

#ifndef RANDEPTH_TREE_H_
#define RANDEPTH_TREE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "randepth/dataset.h"
#include "randepth/rng.h"

namespace randepth {

struct TreeConfig {
  // Global depth cap d_max; a tree's own budget never exceeds it.
  int max_depth = 5;
  // Both children of a split must keep at least this many rows.
  std::size_t min_leaf_size = 5;
  // Fraction of features drawn as split candidates at every node.
  double feature_fraction = 1.0;
};

void ValidateTreeConfig(const TreeConfig& config);

// m_try = max(1, round(fraction * p)), capped at p.
std::size_t NumCandidateFeatures(std::size_t num_features, double fraction);

// x[feature] <= threshold goes left.
struct SplitCandidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  double sse_total = 0.0;
  std::size_t left_count = 0;
  std::size_t right_count = 0;
};

// Two SSE values closer than this (relative to the parent SSE) are a tie;
// ties resolve to the lowest feature index, then the smallest threshold.
inline constexpr double kSseRelativeTieTolerance = 1e-10;

// Exhaustive search over `candidate_features` (must be sorted ascending) and
// all midpoints between consecutive distinct values within `rows`. Returns
// nullopt when no split keeps both children >= min_leaf_size or when none
// strictly lowers the parent SSE. `sse_total` is recomputed by a two-pass sum
// over `rows` in their given order.
//
// BestSplit scans features in parallel (OpenMP) for large nodes;
// BestSplitSerial is the single-threaded reference. Both return identical
// results.
std::optional<SplitCandidate> BestSplit(
    const Dataset& data, std::span<const double> response,
    std::span<const std::size_t> rows,
    std::span<const std::size_t> candidate_features,
    std::size_t min_leaf_size);
std::optional<SplitCandidate> BestSplitSerial(
    const Dataset& data, std::span<const double> response,
    std::span<const std::size_t> rows,
    std::span<const std::size_t> candidate_features,
    std::size_t min_leaf_size);

struct TreeNode {
  // -1 on leaves.
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  // Leaf constant (mean response in the region); unused on internal nodes.
  double value = 0.0;

  bool is_leaf() const { return left < 0; }
};

// Binary regression tree with constant leaves, stored as a flat node array
// (root at index 0).
class RegressionTree {
 public:
  RegressionTree() : nodes_{TreeNode{}} {}
  // Validates structure: every internal node has two in-range children, each
  // node is reached once, leaf values are finite.
  RegressionTree(std::vector<TreeNode> nodes, int depth_drawn);

  static RegressionTree Leaf(double value, int depth_drawn = 0);

  double Predict(std::span<const double> x) const;
  double Predict(const Dataset& data, std::size_t row) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  // Depth budget the tree was grown with.
  int depth_drawn() const { return depth_drawn_; }

  std::size_t CountSplits() const;
  std::size_t LeafCount() const;
  // Longest root-to-leaf edge count.
  int Depth() const;

 private:
  std::vector<TreeNode> nodes_;
  int depth_drawn_ = 0;
};

// Grows a CART tree on `rows` of `data`, fitting `response` (may differ from
// data.target(), e.g. boosting residuals). A node is split only when its depth
// is below `depth_budget`, it holds >= 2*min_leaf_size rows and BestSplit
// finds a candidate on a fresh random m_try feature subset.
RegressionTree GrowTree(const Dataset& data, std::span<const double> response,
                        std::span<const std::size_t> rows,
                        const TreeConfig& config, int depth_budget,
                        const RngStream& rng);

// Depth budget for one tree: `max_depth`, or a uniform draw from
// {1, ..., max_depth} when `random_depth` is set (requires max_depth >= 1).
int DrawDepthBudget(int max_depth, bool random_depth, const RngStream& rng);

// Convenience overload: all rows, response = data.target().
RegressionTree GrowTree(const Dataset& data, const TreeConfig& config,
                        int depth_budget, const RngStream& rng);

}  // namespace randepth

#endif  // RANDEPTH_TREE_H_
