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

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "randepth/error.h"
#include "randepth/rng.h"
#include "randepth/tree.h"
#include "randepth/tree_io.h"

namespace randepth {
namespace {

std::vector<std::size_t> Iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

Dataset RandomData(std::size_t n, std::size_t p, std::uint64_t seed,
                   bool integer_valued = false) {
  Engine e = RngStream(seed).engine();
  std::normal_distribution<double> normal;
  std::vector<double> x(n * p);
  std::vector<double> y(n);
  for (auto& v : x) v = integer_valued ? std::floor(4 * Uniform01(e)) : normal(e);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = integer_valued ? std::floor(3 * Uniform01(e))
                          : x[i * p] * x[i * p] + 0.3 * normal(e);
  }
  return Dataset(n, p, x, y);
}

TEST(BestSplit, SeparableStep) {
  const Dataset d(4, 1, std::vector<double>{1, 2, 3, 4}, {0, 0, 1, 1});
  const auto rows = Iota(4);
  const std::vector<std::size_t> f = {0};
  const auto s = BestSplit(d, d.target(), rows, f, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->feature, 0u);
  EXPECT_EQ(s->threshold, 2.5);
  EXPECT_EQ(s->sse_total, 0.0);
  EXPECT_EQ(s->left_count, 2u);
}

TEST(BestSplit, AlternatingResponse) {
  // Candidates 1.5, 2.5, 3.5 score 2/3, 1, 2/3; the tie goes to 1.5.
  const Dataset d(4, 1, std::vector<double>{1, 2, 3, 4}, {0, 1, 0, 1});
  const auto rows = Iota(4);
  const std::vector<std::size_t> f = {0};
  const auto s = BestSplit(d, d.target(), rows, f, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->threshold, 1.5);
  EXPECT_NEAR(s->sse_total, 2.0 / 3.0, 1e-15);
}

TEST(BestSplit, NoSplitCases) {
  const Dataset flat(4, 1, std::vector<double>{1, 2, 3, 4}, {5, 5, 5, 5});
  const auto rows = Iota(4);
  const std::vector<std::size_t> f = {0};
  EXPECT_FALSE(BestSplit(flat, flat.target(), rows, f, 1));

  const Dataset tied_x(4, 1, std::vector<double>{2, 2, 2, 2}, {0, 1, 2, 3});
  EXPECT_FALSE(BestSplit(tied_x, tied_x.target(), rows, f, 1));

  const Dataset step(4, 1, std::vector<double>{1, 2, 3, 4}, {0, 0, 1, 1});
  EXPECT_FALSE(BestSplit(step, step.target(), rows, f, 3));
  EXPECT_TRUE(BestSplit(step, step.target(), rows, f, 2));
}

TEST(BestSplit, TieGoesToLowestFeature) {
  // Two identical columns.
  const Dataset d(4, 2, std::vector<double>{1, 1, 2, 2, 3, 3, 4, 4},
                  {0, 0, 1, 1});
  const auto rows = Iota(4);
  const std::vector<std::size_t> f = {0, 1};
  EXPECT_EQ(BestSplit(d, d.target(), rows, f, 1)->feature, 0u);
  const std::vector<std::size_t> only_second = {1};
  EXPECT_EQ(BestSplit(d, d.target(), rows, only_second, 1)->feature, 1u);
}

TEST(BestSplit, ThresholdBetweenAdjacentDoubles) {
  const double a = 1.0;
  const double b = std::nextafter(a, 2.0);
  const Dataset d(2, 1, std::vector<double>{a, b}, {0, 1});
  const auto rows = Iota(2);
  const std::vector<std::size_t> f = {0};
  const auto s = BestSplit(d, d.target(), rows, f, 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->left_count, 1u);
  EXPECT_EQ(s->right_count, 1u);
}

TEST(BestSplit, MatchesExhaustiveOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Engine e = RngStream(seed).Child("shape").engine();
    const std::size_t n = 2 + UniformIndex(e, 29);
    const std::size_t p = 1 + UniformIndex(e, 3);
    const std::size_t min_leaf = 1 + UniformIndex(e, 3);
    const Dataset d = RandomData(n, p, seed, seed % 2 == 0);
    const auto rows = Iota(n);
    const auto features = Iota(p);
    const auto got = BestSplit(d, d.target(), rows, features, min_leaf);
    const auto want =
        testing::ExhaustiveSplit(d, d.target(), rows, features, min_leaf);
    ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
    if (!got) continue;
    EXPECT_EQ(got->feature, want->feature) << "seed " << seed;
    EXPECT_EQ(got->threshold, want->threshold) << "seed " << seed;
    EXPECT_EQ(got->sse_total, want->sse_total) << "seed " << seed;
  }
}

TEST(BestSplit, RowSubsetAndCustomResponse) {
  const Dataset d = RandomData(40, 3, 5);
  std::vector<double> response(40);
  for (std::size_t i = 0; i < 40; ++i) response[i] = d.feature(i, 2) > 0 ? 1 : -1;
  const std::vector<std::size_t> rows = {1, 3, 5, 7, 9, 11, 13, 15, 17, 19};
  const std::vector<std::size_t> f = {0, 1, 2};
  const auto got = BestSplit(d, response, rows, f, 1);
  const auto want = testing::ExhaustiveSplit(d, response, rows, f, 1);
  ASSERT_TRUE(got && want);
  EXPECT_EQ(got->feature, 2u);
  EXPECT_EQ(got->threshold, want->threshold);
  EXPECT_EQ(got->sse_total, 0.0);
}

TEST(BestSplit, ParallelMatchesSerial) {
  const Dataset d = RandomData(6000, 8, 12);
  const auto rows = Iota(6000);
  const auto f = Iota(8);
  const auto a = BestSplit(d, d.target(), rows, f, 5);
  const auto b = BestSplitSerial(d, d.target(), rows, f, 5);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->feature, b->feature);
  EXPECT_EQ(a->threshold, b->threshold);
  EXPECT_EQ(a->sse_total, b->sse_total);
}

TEST(BestSplit, RejectsBadCandidates) {
  const Dataset d = RandomData(10, 2, 1);
  const auto rows = Iota(10);
  const std::vector<std::size_t> unsorted = {1, 0};
  const std::vector<std::size_t> out_of_range = {2};
  EXPECT_THROW(BestSplit(d, d.target(), rows, unsorted, 1), ContractViolation);
  EXPECT_THROW(BestSplit(d, d.target(), rows, out_of_range, 1),
               ContractViolation);
  EXPECT_THROW(BestSplit(d, d.target(), rows, std::vector<std::size_t>{}, 1),
               ContractViolation);
}

TEST(RegressionTree, ThresholdRoutesLeft) {
  std::vector<TreeNode> nodes(3);
  nodes[0] = {.feature = 0, .threshold = 2.0, .left = 1, .right = 2};
  nodes[1].value = -1.0;
  nodes[2].value = 1.0;
  const RegressionTree t(nodes, 1);
  EXPECT_EQ(t.Predict(std::vector<double>{2.0}), -1.0);
  EXPECT_EQ(t.Predict(std::vector<double>{std::nextafter(2.0, 3.0)}), 1.0);
  EXPECT_EQ(t.CountSplits(), 1u);
  EXPECT_EQ(t.LeafCount(), 2u);
  EXPECT_EQ(t.Depth(), 1);
}

TEST(RegressionTree, RejectsMalformedNodes) {
  std::vector<TreeNode> cycle(3);
  cycle[0] = {.feature = 0, .threshold = 0, .left = 1, .right = 1};
  EXPECT_THROW(RegressionTree(cycle, 1), ContractViolation);
  std::vector<TreeNode> dangling(1);
  dangling[0] = {.feature = 0, .threshold = 0, .left = 1, .right = 2};
  EXPECT_THROW(RegressionTree(dangling, 1), ContractViolation);
  std::vector<TreeNode> bad_leaf(1);
  bad_leaf[0].value = NAN;
  EXPECT_THROW(RegressionTree(bad_leaf, 0), ContractViolation);
}

TEST(GrowTree, RespectsDepthAndLeafSize) {
  const Dataset d = RandomData(500, 4, 3);
  for (int depth : {0, 1, 3, 6}) {
    const TreeConfig config{.max_depth = 6, .min_leaf_size = 7};
    const RegressionTree t = GrowTree(d, config, depth, RngStream(1));
    EXPECT_LE(t.Depth(), depth);
    EXPECT_EQ(t.depth_drawn(), depth);
    EXPECT_LE(t.LeafCount(), std::size_t{1} << depth);
    EXPECT_EQ(t.LeafCount(), t.CountSplits() + 1);

    // Leaves hold the mean of the rows routed to them, and >= min_leaf rows.
    std::map<double, std::pair<double, int>> by_leaf;
    for (std::size_t i = 0; i < d.num_rows(); ++i) {
      auto& acc = by_leaf[t.Predict(d, i)];
      acc.first += d.target()[i];
      ++acc.second;
    }
    for (const auto& [value, acc] : by_leaf) {
      EXPECT_GE(acc.second, 7);
      EXPECT_NEAR(value, acc.first / acc.second, 1e-12);
    }
  }
}

TEST(GrowTree, FullDepthOnContinuousData) {
  const Dataset d = RandomData(2000, 3, 8);
  const TreeConfig config{.max_depth = 4, .min_leaf_size = 1};
  const RegressionTree t = GrowTree(d, config, 4, RngStream(2));
  EXPECT_EQ(t.CountSplits(), 15u);
}

TEST(GrowTree, InvariantToMonotoneFeatureTransform) {
  const Dataset d = RandomData(300, 3, 21);
  std::vector<double> x;
  for (std::size_t i = 0; i < d.num_rows(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) x.push_back(std::exp(d.feature(i, j)));
  }
  const Dataset t(d.num_rows(), 3, x,
                  std::vector<double>(d.target().begin(), d.target().end()));
  const TreeConfig config{.max_depth = 5, .min_leaf_size = 3};
  const RegressionTree a = GrowTree(d, config, 5, RngStream(4));
  const RegressionTree b = GrowTree(t, config, 5, RngStream(4));
  ASSERT_EQ(a.nodes().size(), b.nodes().size());
  for (std::size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_DOUBLE_EQ(a.Predict(d, i), b.Predict(t, i));
  }
}

TEST(GrowTree, FeatureSubsetIsDrawnPerNode) {
  const Dataset d = RandomData(800, 6, 30);
  const TreeConfig config{.max_depth = 4, .min_leaf_size = 1,
                          .feature_fraction = 1.0 / 6.0};
  const RegressionTree t = GrowTree(d, config, 4, RngStream(6));
  std::set<int> used;
  for (const auto& n : t.nodes()) {
    if (n.feature >= 0) used.insert(n.feature);
  }
  // A single per-tree subset of size 1 would use exactly one feature.
  EXPECT_GT(used.size(), 1u);
  EXPECT_EQ(NumCandidateFeatures(6, 1.0 / 6.0), 1u);
  EXPECT_EQ(NumCandidateFeatures(10, 0.01), 1u);
  EXPECT_EQ(NumCandidateFeatures(10, 1.0), 10u);
}

TEST(GrowTree, PredictionMatchesDirectRouting) {
  const Dataset d = RandomData(400, 3, 17);
  const RegressionTree t =
      GrowTree(d, TreeConfig{.max_depth = 5, .min_leaf_size = 2}, 5,
               RngStream(3));
  for (std::size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_EQ(t.Predict(d, i), testing::RouteTree(t, d.row(i)));
  }
}

TEST(DepthBudget, FixedAndUniform) {
  EXPECT_EQ(DrawDepthBudget(4, false, RngStream(1)), 4);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 4000; ++i) {
    const int d = DrawDepthBudget(4, true, RngStream(1).Child(i));
    ASSERT_GE(d, 1);
    ASSERT_LE(d, 4);
    ++counts[d];
  }
  for (int d = 1; d <= 4; ++d) EXPECT_NEAR(counts[d], 1000, 100);
  EXPECT_THROW(DrawDepthBudget(0, true, RngStream(1)), ContractViolation);
}

TEST(TreeConfig, Validation) {
  EXPECT_THROW(ValidateTreeConfig({.max_depth = -1}), ContractViolation);
  EXPECT_THROW(ValidateTreeConfig({.min_leaf_size = 0}), ContractViolation);
  EXPECT_THROW(ValidateTreeConfig({.feature_fraction = -0.1}),
               ContractViolation);
  // kappa = 0 still yields one candidate feature.
  EXPECT_NO_THROW(ValidateTreeConfig({.feature_fraction = 0.0}));
  EXPECT_THROW(ValidateTreeConfig({.feature_fraction = 1.5}),
               ContractViolation);
  EXPECT_NO_THROW(ValidateTreeConfig({}));
}

TEST(TreeIo, JsonRoundTrip) {
  const Dataset d = RandomData(300, 3, 44);
  const RegressionTree t =
      GrowTree(d, TreeConfig{.max_depth = 4, .min_leaf_size = 2}, 3,
               RngStream(3));
  const RegressionTree back = TreeFromJson(TreeToJson(t));
  EXPECT_EQ(back.depth_drawn(), 3);
  ASSERT_EQ(back.nodes().size(), t.nodes().size());
  for (std::size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_EQ(back.Predict(d, i), t.Predict(d, i));
  }
  const TreeConfig c{.max_depth = 7, .min_leaf_size = 3,
                     .feature_fraction = 0.25};
  const TreeConfig c2 = TreeConfigFromJson(TreeConfigToJson(c));
  EXPECT_EQ(c2.max_depth, 7);
  EXPECT_EQ(c2.min_leaf_size, 3u);
  EXPECT_EQ(c2.feature_fraction, 0.25);
}

}  // namespace
}  // namespace randepth
