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

#include "randepth/sampling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "randepth/error.h"

namespace randepth {

std::size_t SampleSize(std::size_t n, double fraction) {
  const double scaled = std::round(fraction * static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(scaled));
}

IndexSample DrawSample(std::size_t n, double fraction, bool with_replacement,
                       const RngStream& rng) {
  Require(n >= 1, "DrawSample: n must be >= 1");
  Require(fraction >= 0.0 && fraction <= 1.0,
          "DrawSample: fraction must lie in [0, 1]");
  const std::size_t size = SampleSize(n, fraction);
  Engine engine = rng.engine();

  IndexSample sample;
  sample.with_replacement = with_replacement;
  sample.fraction = fraction;
  sample.indices.resize(size);
  if (with_replacement) {
    for (auto& idx : sample.indices) idx = UniformIndex(engine, n);
    std::sort(sample.indices.begin(), sample.indices.end());
    return sample;
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + UniformIndex(engine, n - i);
    std::swap(pool[i], pool[j]);
    sample.indices[i] = pool[i];
  }
  std::sort(sample.indices.begin(), sample.indices.end());
  return sample;
}

std::vector<Fold> SubsampleFolds(std::size_t n, std::size_t folds,
                                 double train_fraction, const RngStream& rng) {
  Require(folds >= 1, "SubsampleFolds: folds must be >= 1");
  Require(train_fraction > 0.0 && train_fraction < 1.0,
          "SubsampleFolds: train_fraction must lie in (0, 1)");
  const auto train_size = static_cast<std::size_t>(
      std::round(train_fraction * static_cast<double>(n)));
  Require(train_size >= 1, "SubsampleFolds: empty train set");
  Require(train_size < n, "SubsampleFolds: empty test set");

  std::vector<Fold> out;
  out.reserve(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    Engine engine = rng.Child(f).engine();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = 0; i < train_size; ++i) {
      std::swap(perm[i], perm[i + UniformIndex(engine, n - i)]);
    }
    Fold fold;
    fold.train.fraction = train_fraction;
    fold.test.fraction = 1.0 - train_fraction;
    fold.train.indices.assign(perm.begin(), perm.begin() + train_size);
    fold.test.indices.assign(perm.begin() + train_size, perm.end());
    std::sort(fold.train.indices.begin(), fold.train.indices.end());
    std::sort(fold.test.indices.begin(), fold.test.indices.end());
    out.push_back(std::move(fold));
  }
  return out;
}

double Mse(std::span<const double> predictions,
           std::span<const double> actuals) {
  Require(predictions.size() == actuals.size(),
          "Mse: length mismatch (" + std::to_string(predictions.size()) +
              " vs " + std::to_string(actuals.size()) + ")");
  Require(!predictions.empty(), "Mse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - actuals[i];
    sum += d * d;
  }
  return sum / static_cast<double>(predictions.size());
}

}  // namespace randepth
