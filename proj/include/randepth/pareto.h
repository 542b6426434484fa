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

#ifndef RANDEPTH_PARETO_H_
#define RANDEPTH_PARETO_H_

#include <span>
#include <vector>

#include "randepth/evaluate.h"

namespace randepth::tuning {

// Mutually nondominated candidates, ascending by fit_seconds.
struct ParetoFront {
  std::vector<Candidate> members;
};

// a is no worse in both (mse, fit_seconds) and strictly better in one.
bool Dominates(const Candidate& a, const Candidate& b);

// Exactly the nondominated subset of the valid candidates. Among candidates
// with identical objectives only the first in input order survives.
// O(n log n).
ParetoFront NondominatedFilter(std::span<const Candidate> candidates);

// Fast nondominated sorting: rank 0 is the first front. Invalid candidates
// get the last rank.
std::vector<int> NondominatedRanks(std::span<const Candidate> candidates);

// Crowding distance of each member of one front (indices into candidates).
std::vector<double> CrowdingDistance(std::span<const Candidate> candidates,
                                     std::span<const std::size_t> front);

}  // namespace randepth::tuning

#endif  // RANDEPTH_PARETO_H_
