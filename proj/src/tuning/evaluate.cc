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

#include "randepth/evaluate.h"

#include <cmath>
#include <exception>

#include "randepth/sampling.h"

namespace randepth::tuning {

const char* FamilyName(LearnerFamily family) {
  return family == LearnerFamily::kForest ? "forest" : "boost";
}

LearnerSetup LearnerSetup::WithRandomDepth(bool on) const {
  LearnerSetup out = *this;
  out.forest.random_depth = on;
  out.boost.random_depth = on;
  return out;
}

LearnerSetup LearnerSetup::WithSeed(std::uint64_t seed) const {
  LearnerSetup out = *this;
  out.forest.seed = seed;
  out.boost.seed = seed;
  return out;
}

LearnerSetup ApplyParams(const LearnerSetup& base, const ParamValues& params) {
  LearnerSetup out = base;
  for (const auto& [name, value] : params) {
    if (name == kNumTrees) {
      out.forest.n_trees = static_cast<std::size_t>(std::llround(value));
    } else if (name == kNumIterations) {
      out.boost.n_iterations = static_cast<std::size_t>(std::llround(value));
    } else if (name == kLearningRate) {
      out.boost.learning_rate = value;
    } else if (name == kObsFraction) {
      out.forest.obs_fraction = value;
      out.boost.obs_fraction = value;
    } else if (name == kWithReplacement) {
      out.forest.with_replacement = value != 0.0;
    } else if (name == kFeatureFraction) {
      out.forest.tree.feature_fraction = value;
      out.boost.tree.feature_fraction = value;
    }
  }
  return out;
}

std::vector<double> FittedLearner::PredictBatch(const Dataset& data) const {
  return std::visit([&](const auto& m) { return m.PredictBatch(data); },
                    model_);
}

const FitStats& FittedLearner::fit_stats() const {
  return std::visit(
      [](const auto& m) -> const FitStats& { return m.fit_stats(); }, model_);
}

FittedLearner FitLearner(const LearnerSetup& setup, const Dataset& data) {
  if (setup.family == LearnerFamily::kForest) {
    return FittedLearner(FitForest(data, setup.forest));
  }
  return FittedLearner(FitBoost(data, setup.boost));
}

namespace {

Candidate Invalid(Candidate c, const std::string& reason) {
  c.valid = false;
  c.invalid_reason = reason;
  return c;
}

}  // namespace

Candidate EvaluateCandidate(const ParamValues& params, const LearnerSetup& base,
                            const Dataset& data, const CvScheme& scheme,
                            const RngStream& rng) {
  Candidate c;
  c.params = params;
  c.stream_key = rng.key();
  try {
    const LearnerSetup setup = ApplyParams(base, params);
    const auto folds = SubsampleFolds(data.num_rows(), scheme.folds,
                                      scheme.train_fraction,
                                      rng.Child("folds"));
    double mse_sum = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const Dataset train = data.Subset(folds[f].train.indices);
      const Dataset test = data.Subset(folds[f].test.indices);
      const FittedLearner model =
          FitLearner(setup.WithSeed(rng.Child("fit", f).key()), train);
      mse_sum += Mse(model.PredictBatch(test), test.target());
      c.fit_seconds += model.fit_stats().wall_seconds;
      c.total_splits += model.fit_stats().total_splits;
    }
    c.mse = mse_sum / static_cast<double>(folds.size());
    if (!std::isfinite(c.mse)) return Invalid(c, "non-finite MSE");
  } catch (const std::exception& e) {
    return Invalid(c, e.what());
  }
  return c;
}

Candidate EvaluateHoldout(const ParamValues& params, const LearnerSetup& base,
                          const Dataset& train, const Dataset& test,
                          const RngStream& rng) {
  Candidate c;
  c.params = params;
  c.stream_key = rng.key();
  try {
    const LearnerSetup setup = ApplyParams(base, params);
    const FittedLearner model =
        FitLearner(setup.WithSeed(rng.Child("fit").key()), train);
    c.mse = Mse(model.PredictBatch(test), test.target());
    c.fit_seconds = model.fit_stats().wall_seconds;
    c.total_splits = model.fit_stats().total_splits;
    if (!std::isfinite(c.mse)) return Invalid(c, "non-finite MSE");
  } catch (const std::exception& e) {
    return Invalid(c, e.what());
  }
  return c;
}

}  // namespace randepth::tuning
