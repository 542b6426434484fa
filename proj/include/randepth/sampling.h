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

#ifndef RANDEPTH_SAMPLING_H_
#define RANDEPTH_SAMPLING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "randepth/rng.h"

namespace randepth {

// Row indices drawn from a dataset of size n.
struct IndexSample {
  std::vector<std::size_t> indices;
  bool with_replacement = false;
  double fraction = 1.0;
};

// Sample size for a relative fraction: max(1, round(fraction * n)).
std::size_t SampleSize(std::size_t n, double fraction);

// Uniform sample of SampleSize(n, fraction) rows. Without replacement uses a
// partial Fisher-Yates shuffle, so the indices are distinct. Indices are
// returned in ascending order.
IndexSample DrawSample(std::size_t n, double fraction, bool with_replacement,
                       const RngStream& rng);

struct Fold {
  IndexSample train;
  IndexSample test;
};

// `folds` independent random train/holdout splits ("subsampling", not a
// partition into k blocks). Each train set has round(train_fraction * n)
// rows; the test set is its complement.
std::vector<Fold> SubsampleFolds(std::size_t n, std::size_t folds,
                                 double train_fraction, const RngStream& rng);

// Mean squared error. Throws ContractViolation on length mismatch or empty
// input.
double Mse(std::span<const double> predictions, std::span<const double> actuals);

}  // namespace randepth

#endif  // RANDEPTH_SAMPLING_H_
