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

#include "randepth/search.h"

#include <chrono>
#include <utility>

#include "randepth/error.h"

namespace randepth::tuning {
namespace {

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

Evaluator MakeCvEvaluator(LearnerSetup base, const Dataset& data,
                          CvScheme scheme) {
  return [base = std::move(base), &data, scheme](const ParamValues& params,
                                                 const RngStream& rng) {
    return EvaluateCandidate(params, base, data, scheme, rng);
  };
}

SearchResult RandomSearch(const ParamSpace& space, const Evaluator& evaluator,
                          std::size_t k, const RngStream& rng) {
  Require(k >= 1, "RandomSearch: k must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;
  result.candidates.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Engine engine = rng.Child("draw", i).engine();
    const ParamValues params = space.Draw(engine);
    Candidate c = evaluator(params, rng.Child("eval", i));
    c.index = i;
    c.generation = -1;
    result.candidates.push_back(std::move(c));
  }
  for (const auto& c : result.candidates) {
    if (c.valid && (!result.best || c.mse < result.best->mse)) result.best = c;
  }
  if (!result.best) {
    result.failure = "all " + std::to_string(k) + " candidates invalid";
    if (!result.candidates.empty()) {
      result.failure += " (first: " + result.candidates[0].invalid_reason + ")";
    }
  }
  result.wall_seconds = SecondsSince(start);
  return result;
}

HybridResult HybridTuneFit(const Dataset& data, const ParamSpace& space,
                           std::size_t k, const RngStream& rng,
                           const LearnerSetup& base, const CvScheme& scheme) {
  Require(base.family == LearnerFamily::kForest,
          "HybridTuneFit: forest setups only");
  const auto start = std::chrono::steady_clock::now();
  HybridResult out;
  out.search = RandomSearch(
      space, MakeCvEvaluator(base.WithRandomDepth(true), data, scheme), k, rng);
  if (out.search.best) {
    const LearnerSetup final_setup =
        ApplyParams(base.WithRandomDepth(false), out.search.best->params)
            .WithSeed(rng.Child("final").key());
    out.final_model = FitForest(data, final_setup.forest);
    out.final_fit_seconds = out.final_model->fit_stats().wall_seconds;
  }
  out.tuning_seconds = SecondsSince(start);
  return out;
}

}  // namespace randepth::tuning
