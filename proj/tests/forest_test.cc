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
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "randepth/error.h"
#include "randepth/forest.h"
#include "randepth/friedman.h"

namespace randepth {
namespace {

const friedman::GeneratedData& Data() {
  static const friedman::GeneratedData data = [] {
    const auto spec = friedman::SampleSpecFromSeed(5, 2, 13);
    return friedman::GenerateFromSeeds(spec, 600, 13, 14);
  }();
  return data;
}

ForestConfig SmallForest() {
  ForestConfig c;
  c.n_trees = 20;
  c.tree = {.max_depth = 4, .min_leaf_size = 3, .feature_fraction = 0.5};
  c.random_depth = true;
  c.seed = 77;
  return c;
}

TEST(RelativeSplits, ClosedForm) {
  EXPECT_EQ(ExpectedRelativeSplits(1), 1.0);
  EXPECT_EQ(ExpectedRelativeSplits(2), 0.75);
  EXPECT_DOUBLE_EQ(ExpectedRelativeSplits(3), 7.0 / 12.0);
  EXPECT_EQ(ExpectedRelativeSplits(4), 0.46875);
  // Mean leaf count 2^k over k in {1..d_max}, relative to 2^d_max.
  for (int dmax = 1; dmax <= 12; ++dmax) {
    double mean_leaves = 0.0;
    for (int k = 1; k <= dmax; ++k) mean_leaves += std::pow(2.0, k);
    mean_leaves /= dmax;
    EXPECT_NEAR(ExpectedRelativeSplits(dmax),
                mean_leaves / std::pow(2.0, dmax), 1e-15)
        << dmax;
  }
}

TEST(Forest, PredictIsMeanOfTrees) {
  const Dataset& d = Data().dataset;
  const ForestModel f = FitForest(d, SmallForest());
  ASSERT_EQ(f.trees().size(), 20u);
  for (std::size_t i = 0; i < 50; ++i) {
    double sum = 0.0;
    for (const auto& t : f.trees()) sum += testing::RouteTree(t, d.row(i));
    EXPECT_NEAR(f.Predict(d, i), sum / 20.0, 1e-12);
  }
}

TEST(Forest, TreesDependOnlyOnTheirIndex) {
  const Dataset& d = Data().dataset;
  ForestConfig small = SmallForest();
  small.n_trees = 5;
  const ForestModel a = FitForest(d, small);
  const ForestModel b = FitForest(d, SmallForest());
  for (std::size_t t = 0; t < 5; ++t) {
    ASSERT_EQ(a.trees()[t].nodes().size(), b.trees()[t].nodes().size());
    for (std::size_t i = 0; i < 30; ++i) {
      EXPECT_EQ(a.trees()[t].Predict(d, i), b.trees()[t].Predict(d, i));
    }
  }
}

TEST(Forest, ParallelMatchesSerial) {
  const Dataset& d = Data().dataset;
  const ForestModel a = FitForest(d, SmallForest());
  const ForestModel b = FitForestSerial(d, SmallForest());
  EXPECT_EQ(a.PredictBatch(d), b.PredictBatchSerial(d));
  EXPECT_EQ(a.PredictBatch(d), a.PredictBatchSerial(d));
  EXPECT_EQ(a.fit_stats().total_splits, b.fit_stats().total_splits);
}

TEST(Forest, FixedDepthUsesTheCap) {
  ForestConfig c = SmallForest();
  c.random_depth = false;
  const ForestModel f = FitForest(Data().dataset, c);
  for (const auto& t : f.trees()) EXPECT_EQ(t.depth_drawn(), 4);
}

TEST(Forest, RandomDepthCoversTheRange) {
  ForestConfig c = SmallForest();
  c.n_trees = 400;
  c.tree.max_depth = 3;
  const ForestModel f = FitForest(Data().dataset, c);
  std::vector<int> counts(4, 0);
  std::size_t splits = 0;
  for (const auto& t : f.trees()) {
    ASSERT_GE(t.depth_drawn(), 1);
    ASSERT_LE(t.depth_drawn(), 3);
    EXPECT_LE(t.Depth(), t.depth_drawn());
    ++counts[t.depth_drawn()];
    splits += t.CountSplits();
  }
  for (int d = 1; d <= 3; ++d) EXPECT_NEAR(counts[d], 400.0 / 3, 40);
  EXPECT_EQ(f.fit_stats().total_splits, splits);
}

TEST(Forest, SingleTreeDegeneratesToCart) {
  const Dataset& d = Data().dataset;
  ForestConfig c;
  c.n_trees = 1;
  c.obs_fraction = 1.0;
  c.with_replacement = false;
  c.tree = {.max_depth = 5, .min_leaf_size = 4, .feature_fraction = 1.0};
  const ForestModel f = FitForest(d, c);
  const RegressionTree cart = GrowTree(d, c.tree, 5, RngStream(999));
  for (std::size_t i = 0; i < d.num_rows(); ++i) {
    EXPECT_EQ(f.Predict(d, i), cart.Predict(d, i));
  }
}

TEST(Forest, SeedChangesTheModel) {
  ForestConfig c = SmallForest();
  const auto a = FitForest(Data().dataset, c).PredictBatch(Data().dataset);
  c.seed = 78;
  const auto b = FitForest(Data().dataset, c).PredictBatch(Data().dataset);
  EXPECT_NE(a, b);
}

TEST(Forest, ConfigValidation) {
  ForestConfig c;
  c.n_trees = 0;
  EXPECT_THROW(ValidateForestConfig(c), ContractViolation);
  c = {};
  c.obs_fraction = -0.1;
  EXPECT_THROW(ValidateForestConfig(c), ContractViolation);
  c.obs_fraction = 1.2;
  EXPECT_THROW(ValidateForestConfig(c), ContractViolation);
  c = {};
  c.random_depth = true;
  c.tree.max_depth = 0;
  EXPECT_THROW(ValidateForestConfig(c), ContractViolation);
}

TEST(Forest, JsonRoundTrip) {
  const Dataset& d = Data().dataset;
  const ForestModel f = FitForest(d, SmallForest());
  const ForestModel back = ForestFromJson(ForestToJson(f));
  EXPECT_EQ(back.PredictBatch(d), f.PredictBatch(d));
  EXPECT_EQ(back.config().seed, 77u);
  EXPECT_TRUE(back.config().random_depth);
  EXPECT_THROW(ForestFromJson(nlohmann::json{{"type", "boost"}}),
               std::exception);
}

}  // namespace
}  // namespace randepth
