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

#include "Eigen/Eigenvalues"
#include "gtest/gtest.h"
#include "randepth/csv.h"
#include "randepth/error.h"
#include "randepth/friedman.h"

namespace randepth::friedman {
namespace {

std::string CsvBytes(const Dataset& d) {
  std::ostringstream out;
  WriteCsv(d, out);
  return out.str();
}

TEST(Friedman, SingleSignalColumn) {
  const Spec spec = SampleSpecFromSeed(1, 0, 3);
  ASSERT_EQ(spec.terms.size(), 1u);
  EXPECT_EQ(spec.terms[0].features, std::vector<std::size_t>{0});
  EXPECT_EQ(spec.terms[0].precision.rows(), 1);
}

TEST(Friedman, TermShapes) {
  const Spec spec = SampleSpecFromSeed(10, 5, 4);
  ASSERT_EQ(spec.terms.size(), 10u);
  for (const Term& t : spec.terms) {
    const std::size_t k = t.features.size();
    ASSERT_GE(k, 1u);
    ASSERT_LE(k, 10u);
    EXPECT_EQ(std::set<std::size_t>(t.features.begin(), t.features.end()).size(),
              k);
    for (auto f : t.features) EXPECT_LT(f, 10u);
    EXPECT_GE(t.coefficient, -1.0);
    EXPECT_LE(t.coefficient, 1.0);
    EXPECT_EQ(t.center.size(), static_cast<Eigen::Index>(k));
  }
}

TEST(Friedman, PrecisionIsSymmetricWithBoundedSpectrum) {
  const Spec spec = SampleSpecFromSeed(10, 0, 5);
  for (const Term& t : spec.terms) {
    EXPECT_EQ(t.precision, t.precision.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t.precision);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      EXPECT_GE(solver.eigenvalues()(i), 0.01 - 1e-12);
      EXPECT_LE(solver.eigenvalues()(i), 4.0 + 1e-12);
    }
  }
}

TEST(Friedman, RandomOrthonormal) {
  Engine e = RngStream(6).engine();
  double corner = 0.0;
  for (int rep = 0; rep < 2000; ++rep) {
    const Eigen::MatrixXd q = RandomOrthonormal(4, e);
    ASSERT_TRUE((q.transpose() * q).isIdentity(1e-12));
    corner += q(0, 0);
  }
  // Haar measure: every entry has mean zero.
  EXPECT_NEAR(corner / 2000, 0.0, 0.05);
}

TEST(Friedman, TermSizeDistribution) {
  // E[floor(1.5 + r)], r ~ Exp(rate 2): 1 + sum_{k>=2} exp(-2(k - 1.5)).
  const double expected = 1.0 + std::exp(-1.0) / (1.0 - std::exp(-2.0));
  Engine e = RngStream(7).engine();
  double sum = 0.0;
  int ones = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const int k = DrawRawTermSize(e);
    ASSERT_GE(k, 1);
    sum += k;
    ones += k == 1;
  }
  EXPECT_NEAR(sum / draws, expected, 0.01);
  EXPECT_NEAR(static_cast<double>(ones) / draws, 1.0 - std::exp(-1.0), 0.005);
}

TEST(Friedman, BumpUsesNegativeExponent) {
  Spec spec;
  spec.p_signal = 1;
  Term t;
  t.coefficient = 2.0;
  t.features = {0};
  t.center = Eigen::VectorXd::Zero(1);
  t.precision = Eigen::MatrixXd::Identity(1, 1);
  spec.terms.push_back(t);
  EXPECT_DOUBLE_EQ(EvaluateSignal(spec, std::vector<double>{1.0}),
                   2.0 * std::exp(-0.5));
  EXPECT_DOUBLE_EQ(EvaluateSignal(spec, std::vector<double>{0.0}), 2.0);
}

TEST(Friedman, NoiseColumnsDoNotAffectSignal) {
  const Spec spec = SampleSpecFromSeed(6, 0, 8);
  for (std::size_t p_noise : {0, 7}) {
    const Spec noisy = SampleSpecFromSeed(6, p_noise, 8);
    std::vector<double> x(6 + p_noise, 0.3);
    const double base = EvaluateSignal(spec, x);
    for (std::size_t j = 6; j < x.size(); ++j) x[j] = 100.0 * j;
    EXPECT_EQ(EvaluateSignal(noisy, x), base);
  }
}

TEST(Friedman, NoiseColumnInvariance) {
  const auto a = GenerateFromSeeds(SampleSpecFromSeed(5, 0, 9), 300, 9, 10);
  const auto b = GenerateFromSeeds(SampleSpecFromSeed(5, 20, 9), 300, 9, 10);
  ASSERT_EQ(b.dataset.num_features(), 25u);
  EXPECT_EQ(a.signal, b.signal);
  EXPECT_EQ(std::vector<double>(a.dataset.target().begin(),
                                a.dataset.target().end()),
            std::vector<double>(b.dataset.target().begin(),
                                b.dataset.target().end()));
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t i = 0; i < 300; ++i) {
      ASSERT_EQ(a.dataset.feature(i, j), b.dataset.feature(i, j));
    }
  }
}

TEST(Friedman, SeedDeterminismIsByteExact) {
  const Spec spec = SampleSpecFromSeed(10, 3, 11);
  const auto a = GenerateFromSeeds(spec, 200, 11, 12);
  const auto b = GenerateFromSeeds(SampleSpecFromSeed(10, 3, 11), 200, 11, 12);
  EXPECT_EQ(CsvBytes(a.dataset), CsvBytes(b.dataset));
  EXPECT_EQ(SpecToJson(spec).dump(),
            SpecToJson(SampleSpecFromSeed(10, 3, 11)).dump());
  const auto c = GenerateFromSeeds(spec, 200, 11, 13);
  EXPECT_NE(CsvBytes(a.dataset), CsvBytes(c.dataset));
}

TEST(Friedman, FeatureColumnsAreStandardNormal) {
  const auto g = GenerateFromSeeds(SampleSpecFromSeed(4, 2, 14), 20000, 14, 15);
  for (std::size_t j = 0; j < 6; ++j) {
    double s = 0.0;
    double s2 = 0.0;
    for (double v : g.dataset.column(j)) {
      s += v;
      s2 += v * v;
    }
    const double mean = s / 20000;
    EXPECT_NEAR(mean, 0.0, 0.03);
    EXPECT_NEAR(std::sqrt(s2 / 20000 - mean * mean), 1.0, 0.03);
  }
}

TEST(Friedman, NoiseVarianceMatchesDistanceToMedian) {
  const auto g = GenerateFromSeeds(SampleSpecFromSeed(5, 0, 16), 9, 16, 17);
  const int draws = 10000;
  std::vector<double> sum(9, 0.0);
  std::vector<double> sum2(9, 0.0);
  for (int rep = 0; rep < draws; ++rep) {
    const auto y = NoisyTarget(g.signal, g.median_signal, RngStream(18).Child(rep));
    for (std::size_t i = 0; i < 9; ++i) {
      const double e = y[i] - g.signal[i];
      sum[i] += e;
      sum2[i] += e * e;
    }
  }
  for (std::size_t i = 0; i < 9; ++i) {
    const double var = sum2[i] / draws - (sum[i] / draws) * (sum[i] / draws);
    const double want = std::abs(g.signal[i] - g.median_signal);
    if (want == 0.0) {
      EXPECT_EQ(var, 0.0);
    } else {
      EXPECT_NEAR(var / want, 1.0, 0.05) << "row " << i;
    }
  }
}

TEST(Friedman, MedianOfSample) {
  EXPECT_EQ(Median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(Median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(Median({}), ContractViolation);
  const auto g = GenerateFromSeeds(SampleSpecFromSeed(3, 0, 19), 101, 19, 20);
  EXPECT_EQ(g.median_signal, Median(g.signal));
}

TEST(Friedman, SingleRow) {
  const auto g = GenerateFromSeeds(SampleSpecFromSeed(3, 1, 2), 1, 2, 3);
  EXPECT_EQ(g.dataset.num_rows(), 1u);
  // The only row is its own median, so it carries no noise.
  EXPECT_EQ(g.dataset.target()[0], g.signal[0]);
}

TEST(Friedman, SpecJsonRoundTrip) {
  const Spec spec = SampleSpecFromSeed(7, 2, 21);
  const Spec back = SpecFromJson(SpecToJson(spec));
  const auto g = GenerateFromSeeds(spec, 50, 21, 22);
  for (std::size_t i = 0; i < 50; ++i) {
    const auto x = g.dataset.row(i);
    EXPECT_EQ(EvaluateSignal(back, x), EvaluateSignal(spec, x));
  }
}

}  // namespace
}  // namespace randepth::friedman
