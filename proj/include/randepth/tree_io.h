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

#ifndef RANDEPTH_TREE_IO_H_
#define RANDEPTH_TREE_IO_H_

#include "json.hpp"
#include "randepth/tree.h"

namespace randepth {

// Nested JSON form:
//   {"depth_drawn": 2,
//    "root": {"kind": "split", "feature": 0, "threshold": 2.5,
//             "left": {"kind": "leaf", "value": 0.0}, "right": {...}}}
nlohmann::json TreeToJson(const RegressionTree& tree);
// Throws IoError on a malformed document.
RegressionTree TreeFromJson(const nlohmann::json& doc);

nlohmann::json TreeConfigToJson(const TreeConfig& config);
TreeConfig TreeConfigFromJson(const nlohmann::json& doc);

}  // namespace randepth

#endif  // RANDEPTH_TREE_IO_H_
