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
#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "randepth/csv.h"
#include "randepth/dataset.h"
#include "randepth/error.h"
#include "randepth/rng.h"
#include "randepth/sampling.h"

namespace randepth {
namespace {

TEST(RngStream, SamePathSameKey) {
  EXPECT_EQ(RngStream(7).Child("tree", 3).key(),
            RngStream(7).Child("tree").Child(3).key());
  EXPECT_NE(RngStream(7).Child("tree", 3).key(),
            RngStream(7).Child("tree", 4).key());
  EXPECT_NE(RngStream(7).Child("a").key(), RngStream(8).Child("a").key());
  EXPECT_NE(RngStream(7).Child("ab").key(),
            RngStream(7).Child("a").Child("b").key());
}

TEST(RngStream, ChildrenIndependentOfDerivationOrder) {
  const RngStream root(11);
  const auto first = root.Child("x").key();
  (void)root.Child("y").engine()();
  EXPECT_EQ(root.Child("x").key(), first);
}

TEST(RngStream, FromKeyReplaysEngine) {
  const RngStream s = RngStream(5).Child("eval", 9);
  Engine a = s.engine();
  Engine b = RngStream::FromKey(s.key()).engine();
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_EQ(RngStream::FromKey(s.key()).Child("fit").key(),
            s.Child("fit").key());
}

TEST(RngStream, UniformHelpersStayInRange) {
  Engine e = RngStream(1).engine();
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = Uniform01(e);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = UniformIndex(e, 7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  // 10000 expected per bucket, sd ~ 93.
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(UniformIndex(e, 1), 0u);
}

TEST(Sampling, SampleSize) {
  EXPECT_EQ(SampleSize(10, 0.5), 5u);
  EXPECT_EQ(SampleSize(10, 0.01), 1u);
  EXPECT_EQ(SampleSize(10, 1.0), 10u);
  EXPECT_EQ(SampleSize(3, 2.0 / 3.0), 2u);
}

TEST(Sampling, WithoutReplacementIsDistinct) {
  const IndexSample s = DrawSample(100, 0.37, false, RngStream(3));
  EXPECT_EQ(s.indices.size(), 37u);
  EXPECT_EQ(std::set<std::size_t>(s.indices.begin(), s.indices.end()).size(),
            37u);
  for (auto i : s.indices) EXPECT_LT(i, 100u);
}

TEST(Sampling, BootstrapCoverage) {
  // Unique fraction of a bootstrap sample tends to 1 - 1/e.
  const IndexSample s = DrawSample(10000, 1.0, true, RngStream(4));
  ASSERT_EQ(s.indices.size(), 10000u);
  const double unique =
      std::set<std::size_t>(s.indices.begin(), s.indices.end()).size() / 1e4;
  EXPECT_NEAR(unique, 1.0 - std::exp(-1.0), 0.02);
}

TEST(Sampling, DrawIsDeterministic) {
  EXPECT_EQ(DrawSample(50, 0.5, true, RngStream(9)).indices,
            DrawSample(50, 0.5, true, RngStream(9)).indices);
  EXPECT_NE(DrawSample(50, 0.5, true, RngStream(9)).indices,
            DrawSample(50, 0.5, true, RngStream(10)).indices);
}

TEST(Sampling, SubsampleFoldsPartitionEachSplit) {
  const auto folds = SubsampleFolds(30, 5, 2.0 / 3.0, RngStream(2));
  ASSERT_EQ(folds.size(), 5u);
  for (const auto& f : folds) {
    EXPECT_EQ(f.train.indices.size(), 20u);
    EXPECT_EQ(f.test.indices.size(), 10u);
    std::set<std::size_t> all(f.train.indices.begin(), f.train.indices.end());
    all.insert(f.test.indices.begin(), f.test.indices.end());
    EXPECT_EQ(all.size(), 30u);
  }
  EXPECT_NE(folds[0].train.indices, folds[1].train.indices);
  EXPECT_THROW(SubsampleFolds(1, 1, 0.5, RngStream(2)), ContractViolation);
}

TEST(Sampling, MseExamples) {
  const std::vector<double> p = {1.0, 2.0};
  const std::vector<double> y = {1.0, 4.0};
  EXPECT_DOUBLE_EQ(Mse(p, y), 2.0);
  EXPECT_DOUBLE_EQ(Mse(y, y), 0.0);
  EXPECT_THROW(Mse(std::vector<double>{1.0}, y), ContractViolation);
  EXPECT_THROW(Mse(std::vector<double>{}, std::vector<double>{}),
               ContractViolation);
}

TEST(Dataset, ColumnMajorAccess) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6};
  const Dataset d(3, 2, x, {7, 8, 9});
  EXPECT_EQ(d.feature(1, 0), 3.0);
  EXPECT_EQ(d.feature(2, 1), 6.0);
  EXPECT_EQ(d.column(1)[0], 2.0);
  EXPECT_EQ(d.column_names(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(d.row(2), (std::vector<double>{5, 6}));

  const std::vector<std::size_t> idx = {2, 2, 0};
  const Dataset s = d.Subset(idx);
  EXPECT_EQ(s.num_rows(), 3u);
  EXPECT_EQ(s.feature(1, 1), 6.0);
  EXPECT_EQ(s.target()[2], 7.0);
  EXPECT_EQ(d.WithTarget({0, 0, 1}).target()[2], 1.0);
}

TEST(Dataset, RejectsBadInput) {
  const std::vector<double> x = {1, NAN};
  EXPECT_THROW(Dataset(2, 1, x, {0, 0}), ContractViolation);
  EXPECT_THROW(Dataset(2, 1, std::vector<double>{1, 2}, {0}),
               ContractViolation);
  EXPECT_THROW(Dataset(0, 1, std::vector<double>{}, {}), ContractViolation);
}

TEST(Csv, RoundTripIsExact) {
  const std::vector<double> x = {0.1, -1e-300, 1.0 / 3.0, 12345.678901234567};
  const Dataset d(2, 2, x, {std::nextafter(1.0, 2.0), -0.0});
  std::stringstream buf;
  WriteCsv(d, buf);
  const Dataset back = ReadCsv(buf);
  ASSERT_EQ(back.num_rows(), 2u);
  ASSERT_EQ(back.num_features(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(back.feature(i, j), d.feature(i, j));
    }
    EXPECT_EQ(back.target()[i], d.target()[i]);
  }
  EXPECT_EQ(back.column_names(), d.column_names());
}

TEST(Csv, MalformedInputIsIoError) {
  std::stringstream empty;
  EXPECT_THROW(ReadCsv(empty), IoError);
  std::stringstream ragged("a,y\n1,2\n3\n");
  EXPECT_THROW(ReadCsv(ragged), IoError);
  std::stringstream text("a,y\n1,abc\n");
  EXPECT_THROW(ReadCsv(text), IoError);
  std::stringstream nan("a,y\n1,nan\n");
  EXPECT_THROW(ReadCsv(nan), IoError);
  EXPECT_THROW(ReadCsvFile("/nonexistent/file.csv"), IoError);
}

TEST(Csv, FormatRealRoundTrips) {
  for (double v : {0.1, 1e-17, 6.02214076e23, -2.5, 0.0}) {
    EXPECT_EQ(ParseReal(FormatReal(v)), v);
  }
  EXPECT_THROW(ParseReal("1.0x"), IoError);
}

}  // namespace
}  // namespace randepth
