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

#ifndef RANDEPTH_SEARCH_H_
#define RANDEPTH_SEARCH_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "randepth/evaluate.h"
#include "randepth/forest.h"
#include "randepth/param_space.h"
#include "randepth/pareto.h"
#include "randepth/rng.h"

namespace randepth::tuning {

// Scores one parameter setting using randomness from the given stream.
using Evaluator =
    std::function<Candidate(const ParamValues& params, const RngStream& rng)>;

// Evaluator running EvaluateCandidate on `data`, which must outlive it.
Evaluator MakeCvEvaluator(LearnerSetup base, const Dataset& data,
                          CvScheme scheme);

struct SearchResult {
  // Lowest mse among valid candidates, earliest draw on ties. Empty when
  // every candidate failed; `failure` then says why.
  std::optional<Candidate> best;
  std::vector<Candidate> candidates;
  double wall_seconds = 0.0;
  std::string failure;
};

// k i.i.d. draws; draw i takes its parameters from (rng, "draw", i) and is
// evaluated with (rng, "eval", i). The draws depend only on `rng` and the
// space, so two searches with the same stream see the same settings.
SearchResult RandomSearch(const ParamSpace& space, const Evaluator& evaluator,
                          std::size_t k, const RngStream& rng);

struct Nsga2Options {
  std::size_t generations = 10;
  std::size_t population = 80;
  double crossover_probability = 0.9;
  double sbx_distribution_index = 15.0;
  double mutation_distribution_index = 20.0;
  // Per-gene; <= 0 means 1 / (number of parameters).
  double mutation_probability = 0.0;
};

struct Nsga2Result {
  // Nondominated subset of every candidate ever evaluated.
  ParetoFront front;
  std::vector<Candidate> archive;
  std::size_t evaluations = 0;
};

// Elitist NSGA-II: nondominated ranks, crowding distance, binary tournament,
// SBX + polynomial mutation on reals, uniform swap + uniform reset on
// integers and booleans. Uses population + generations * population
// evaluations.
Nsga2Result Nsga2(const ParamSpace& space, const Evaluator& evaluator,
                  const Nsga2Options& options, const RngStream& rng);

struct HybridResult {
  // Random search with random depth enabled for every evaluation.
  SearchResult search;
  // Winning parameters refit on all of `data` with random depth disabled.
  std::optional<ForestModel> final_model;
  double tuning_seconds = 0.0;
  double final_fit_seconds = 0.0;
};

// Tune as R2F, deliver an RF. The final fit uses seed (rng, "final").key().
HybridResult HybridTuneFit(const Dataset& data, const ParamSpace& space,
                           std::size_t k, const RngStream& rng,
                           const LearnerSetup& base, const CvScheme& scheme);

}  // namespace randepth::tuning

#endif  // RANDEPTH_SEARCH_H_
