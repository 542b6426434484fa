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

#ifndef RANDEPTH_EXPERIMENTS_H_
#define RANDEPTH_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randepth/evaluate.h"
#include "randepth/friedman.h"
#include "randepth/param_space.h"
#include "randepth/search.h"

namespace randepth::experiments {

// Shared learner defaults for both experiments.
struct LearnerDefaults {
  int max_depth = 5;
  std::size_t forest_min_leaf = 5;
  std::size_t boost_min_leaf = 1;
};

tuning::LearnerSetup BaseSetup(tuning::LearnerFamily family,
                               const LearnerDefaults& defaults);

// One Friedman problem: training rows plus an external test set drawn from
// the same target function with a different data seed.
struct Problem {
  friedman::Spec spec;
  friedman::GeneratedData train;
  friedman::GeneratedData test;
};

// Seeds derive from (master_seed, "dataset", index); test size is n / 2.
Problem MakeProblem(std::uint64_t master_seed, std::size_t index,
                    std::size_t n, std::size_t p_signal, std::size_t p_noise);

// ---------------------------------------------------------------------------
// Multi-objective comparison: NSGA-II on (test MSE, fit time), random depth
// off vs on, per dataset x p_noise x family.

struct Exp1Config {
  std::size_t n_datasets = 4;
  std::size_t n = 10000;
  std::size_t p_signal = 10;
  std::vector<std::size_t> p_noise = {0, 10, 20};
  std::size_t generations = 10;
  std::size_t population = 80;
  long max_iterations = 1000;
  long max_trees = 1000;
  std::vector<tuning::LearnerFamily> families = {tuning::LearnerFamily::kBoost,
                                                 tuning::LearnerFamily::kForest};
  LearnerDefaults learners;
  std::uint64_t seed = 1;
};

// n, budgets and the m / n_tree upper bounds scaled by `scale` in (0, 1].
Exp1Config ScaledExp1(double scale);

struct Exp1Cell {
  std::size_t dataset = 0;
  std::size_t p_noise = 0;
  tuning::LearnerFamily family = tuning::LearnerFamily::kBoost;
  bool random_depth = false;
  tuning::Nsga2Result result;
  std::string error;

  std::optional<double> best_mse() const;
};

struct Exp1Result {
  Exp1Config config;
  std::vector<Exp1Cell> cells;

  // bestMSE(off) - bestMSE(on); positive favours random depth. Empty when a
  // cell failed.
  std::optional<double> BestMseDifference(std::size_t dataset,
                                          std::size_t p_noise,
                                          tuning::LearnerFamily family) const;
};

Exp1Result RunExp1(const Exp1Config& config, std::ostream* log = nullptr);

// Writes exp1_candidates.csv, exp1_fronts.csv and
// exp1_best_mse_difference_<family>.csv; returns the file names.
std::vector<std::string> WriteExp1(const Exp1Result& result,
                                   const std::string& out_dir,
                                   const std::string& manifest_name);

// ---------------------------------------------------------------------------
// Realistic tuning: random search with subsampling CV, final refit, external
// test set; random depth off / on / hybrid.

struct Exp2Config {
  std::size_t n_datasets = 50;
  std::size_t n = 10000;
  std::size_t p_signal = 10;
  std::size_t k = 50;
  std::size_t fixed_trees = 200;
  tuning::CvScheme scheme;
  std::vector<tuning::LearnerFamily> families = {tuning::LearnerFamily::kBoost,
                                                 tuning::LearnerFamily::kForest};
  bool hybrid = true;
  LearnerDefaults learners;
  std::uint64_t seed = 1;
};

Exp2Config ScaledExp2(double scale);

// Variants: "mart"/"rb" (boost), "rf"/"r2f"/"hybrid" (forest).
struct Exp2Outcome {
  std::string variant;
  tuning::LearnerFamily family = tuning::LearnerFamily::kBoost;
  bool random_depth_tuning = false;
  bool random_depth_final = false;
  tuning::ParamValues best_params;
  double best_cv_mse = 0.0;
  double test_mse = 0.0;
  // Search plus final fit.
  double tuning_seconds = 0.0;
  double search_seconds = 0.0;
  double candidate_fit_seconds = 0.0;
  std::size_t search_splits = 0;
  std::size_t evaluated = 0;
  bool ok = false;
  std::string error;
};

struct Exp2Dataset {
  std::size_t dataset = 0;
  std::uint64_t spec_seed = 0;
  std::uint64_t data_seed = 0;
  std::uint64_t test_seed = 0;
  std::vector<Exp2Outcome> outcomes;

  const Exp2Outcome* Find(const std::string& variant) const;
};

struct Exp2Result {
  Exp2Config config;
  std::vector<Exp2Dataset> datasets;

  // Median over datasets of tuning_seconds(on) / tuning_seconds(off).
  std::optional<double> MedianRuntimeRatio(tuning::LearnerFamily family) const;
};

Exp2Result RunExp2(const Exp2Config& config, std::ostream* log = nullptr);

// Writes exp2_outcomes.csv, exp2_differences.csv, exp2_summary.csv.
std::vector<std::string> WriteExp2(const Exp2Result& result,
                                   const std::string& out_dir,
                                   const std::string& manifest_name);

// Fast internal consistency checks; one line per check to `out`. Returns
// true when all pass.
bool RunSelfTest(std::ostream& out);

}  // namespace randepth::experiments

#endif  // RANDEPTH_EXPERIMENTS_H_
