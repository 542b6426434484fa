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

#ifndef RANDEPTH_EVALUATE_H_
#define RANDEPTH_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "randepth/boost.h"
#include "randepth/dataset.h"
#include "randepth/forest.h"
#include "randepth/param_space.h"
#include "randepth/rng.h"

namespace randepth::tuning {

enum class LearnerFamily { kForest, kBoost };

const char* FamilyName(LearnerFamily family);

// Base configuration of a tunable learner; ParamValues override fields.
struct LearnerSetup {
  LearnerFamily family = LearnerFamily::kForest;
  ForestConfig forest;
  BoostConfig boost;

  bool random_depth() const {
    return family == LearnerFamily::kForest ? forest.random_depth
                                            : boost.random_depth;
  }
  LearnerSetup WithRandomDepth(bool on) const;
  LearnerSetup WithSeed(std::uint64_t seed) const;
};

// Unknown names are ignored; booleans are nonzero = true.
LearnerSetup ApplyParams(const LearnerSetup& base, const ParamValues& params);

class FittedLearner {
 public:
  explicit FittedLearner(std::variant<ForestModel, BoostModel> model)
      : model_(std::move(model)) {}

  std::vector<double> PredictBatch(const Dataset& data) const;
  const FitStats& fit_stats() const;
  const std::variant<ForestModel, BoostModel>& model() const { return model_; }

 private:
  std::variant<ForestModel, BoostModel> model_;
};

FittedLearner FitLearner(const LearnerSetup& setup, const Dataset& data);

// One evaluated parameter setting. The two objectives are `mse` and
// `fit_seconds`; the generic optimisers treat them as an abstract
// minimisation pair.
struct Candidate {
  ParamValues params;
  double mse = 0.0;
  double fit_seconds = 0.0;
  std::size_t total_splits = 0;
  // Draw index (random search) or evaluation index (NSGA-II).
  std::size_t index = 0;
  // -1 outside NSGA-II; 0 for the initial population.
  int generation = -1;
  // Key of the stream the evaluation used; RngStream::FromKey replays it.
  std::uint64_t stream_key = 0;
  bool valid = true;
  std::string invalid_reason;
};

// Repeated random train/holdout splitting ("subsampling CV").
struct CvScheme {
  std::size_t folds = 5;
  double train_fraction = 2.0 / 3.0;
};

// Per fold f: split from (rng, "folds", f), fit with seed (rng, "fit", f).key()
// on the train rows, score MSE on the holdout. mse = mean over folds,
// fit_seconds = summed fit wall time. Exceptions mark the candidate invalid.
Candidate EvaluateCandidate(const ParamValues& params, const LearnerSetup& base,
                            const Dataset& data, const CvScheme& scheme,
                            const RngStream& rng);

// Fit on `train` with seed (rng, "fit").key(), score on `test`.
Candidate EvaluateHoldout(const ParamValues& params, const LearnerSetup& base,
                          const Dataset& train, const Dataset& test,
                          const RngStream& rng);

}  // namespace randepth::tuning

#endif  // RANDEPTH_EVALUATE_H_
