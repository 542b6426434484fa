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

#ifndef RANDEPTH_PARAM_SPACE_H_
#define RANDEPTH_PARAM_SPACE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "randepth/rng.h"

namespace randepth::tuning {

enum class ParamKind { kInteger, kReal, kBoolean };

struct ParamDescriptor {
  std::string name;
  ParamKind kind = ParamKind::kReal;
  // Inclusive bounds; booleans are {0, 1}.
  double lower = 0.0;
  double upper = 1.0;
};

// Booleans and integers are stored as exact doubles.
using ParamValues = std::map<std::string, double>;

class ParamSpace {
 public:
  ParamSpace& AddInteger(std::string name, long lower, long upper);
  ParamSpace& AddReal(std::string name, double lower, double upper);
  ParamSpace& AddBoolean(std::string name);

  const std::vector<ParamDescriptor>& params() const { return params_; }
  std::size_t size() const { return params_.size(); }

  // Independent uniform draw per dimension (integers uniform over the
  // inclusive range, booleans fair).
  ParamValues Draw(Engine& engine) const;
  // Rounds integers/booleans and clamps everything into bounds.
  double Repair(const ParamDescriptor& param, double value) const;

 private:
  std::vector<ParamDescriptor> params_;
};

// Parameter names understood by ApplyParams.
inline constexpr char kNumTrees[] = "n_trees";
inline constexpr char kNumIterations[] = "n_iterations";
inline constexpr char kLearningRate[] = "learning_rate";
inline constexpr char kObsFraction[] = "obs_fraction";
inline constexpr char kWithReplacement[] = "with_replacement";
inline constexpr char kFeatureFraction[] = "feature_fraction";

// Boosting: m in {1..max_iterations} (omitted when nullopt, i.e. m fixed),
// nu, lambda, kappa in [0, 1].
ParamSpace BoostSearchSpace(std::optional<long> max_iterations);
// Forests: n_tree in {1..max_trees} (omitted when nullopt), lambda in [0, 1],
// sampling with/without replacement, kappa in [0, 1].
ParamSpace ForestSearchSpace(std::optional<long> max_trees);

nlohmann::json ParamSpaceToJson(const ParamSpace& space);

}  // namespace randepth::tuning

#endif  // RANDEPTH_PARAM_SPACE_H_
