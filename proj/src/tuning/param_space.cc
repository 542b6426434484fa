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

#include "randepth/param_space.h"

#include <algorithm>
#include <cmath>

#include "randepth/error.h"

namespace randepth::tuning {

ParamSpace& ParamSpace::AddInteger(std::string name, long lower, long upper) {
  Require(lower <= upper, "ParamSpace: empty integer range for " + name);
  params_.push_back({std::move(name), ParamKind::kInteger,
                     static_cast<double>(lower), static_cast<double>(upper)});
  return *this;
}

ParamSpace& ParamSpace::AddReal(std::string name, double lower, double upper) {
  Require(lower <= upper, "ParamSpace: empty interval for " + name);
  params_.push_back({std::move(name), ParamKind::kReal, lower, upper});
  return *this;
}

ParamSpace& ParamSpace::AddBoolean(std::string name) {
  params_.push_back({std::move(name), ParamKind::kBoolean, 0.0, 1.0});
  return *this;
}

ParamValues ParamSpace::Draw(Engine& engine) const {
  ParamValues values;
  for (const auto& p : params_) {
    switch (p.kind) {
      case ParamKind::kReal:
        values[p.name] = p.lower + (p.upper - p.lower) * Uniform01(engine);
        break;
      case ParamKind::kInteger: {
        const auto span = static_cast<std::uint64_t>(p.upper - p.lower) + 1;
        values[p.name] =
            p.lower + static_cast<double>(UniformIndex(engine, span));
        break;
      }
      case ParamKind::kBoolean:
        values[p.name] = static_cast<double>(UniformIndex(engine, 2));
        break;
    }
  }
  return values;
}

double ParamSpace::Repair(const ParamDescriptor& param, double value) const {
  if (param.kind != ParamKind::kReal) value = std::round(value);
  return std::clamp(value, param.lower, param.upper);
}

ParamSpace BoostSearchSpace(std::optional<long> max_iterations) {
  ParamSpace space;
  if (max_iterations) space.AddInteger(kNumIterations, 1, *max_iterations);
  space.AddReal(kLearningRate, 0.0, 1.0)
      .AddReal(kObsFraction, 0.0, 1.0)
      .AddReal(kFeatureFraction, 0.0, 1.0);
  return space;
}

ParamSpace ForestSearchSpace(std::optional<long> max_trees) {
  ParamSpace space;
  if (max_trees) space.AddInteger(kNumTrees, 1, *max_trees);
  space.AddReal(kObsFraction, 0.0, 1.0)
      .AddBoolean(kWithReplacement)
      .AddReal(kFeatureFraction, 0.0, 1.0);
  return space;
}

nlohmann::json ParamSpaceToJson(const ParamSpace& space) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : space.params()) {
    const char* kind = p.kind == ParamKind::kReal      ? "real"
                       : p.kind == ParamKind::kInteger ? "integer"
                                                       : "boolean";
    out.push_back(
        {{"name", p.name}, {"kind", kind}, {"lower", p.lower}, {"upper", p.upper}});
  }
  return out;
}

}  // namespace randepth::tuning
