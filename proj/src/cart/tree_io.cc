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

#include "randepth/tree_io.h"

#include <string>
#include <vector>

#include "randepth/error.h"

namespace randepth {
namespace {

using nlohmann::json;

json NodeToJson(const std::vector<TreeNode>& nodes, std::int32_t id) {
  const TreeNode& node = nodes[id];
  if (node.is_leaf()) return json{{"kind", "leaf"}, {"value", node.value}};
  return json{{"kind", "split"},
              {"feature", node.feature},
              {"threshold", node.threshold},
              {"left", NodeToJson(nodes, node.left)},
              {"right", NodeToJson(nodes, node.right)}};
}

std::int32_t NodeFromJson(const json& doc, std::vector<TreeNode>& nodes) {
  const auto id = static_cast<std::int32_t>(nodes.size());
  nodes.emplace_back();
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "leaf") {
    nodes[id].value = doc.at("value").get<double>();
    return id;
  }
  if (kind != "split") throw IoError("unknown tree node kind '" + kind + "'");
  nodes[id].feature = doc.at("feature").get<std::int32_t>();
  nodes[id].threshold = doc.at("threshold").get<double>();
  const std::int32_t left = NodeFromJson(doc.at("left"), nodes);
  const std::int32_t right = NodeFromJson(doc.at("right"), nodes);
  nodes[id].left = left;
  nodes[id].right = right;
  return id;
}

}  // namespace

json TreeToJson(const RegressionTree& tree) {
  return json{{"depth_drawn", tree.depth_drawn()},
              {"root", NodeToJson(tree.nodes(), 0)}};
}

RegressionTree TreeFromJson(const json& doc) {
  try {
    std::vector<TreeNode> nodes;
    NodeFromJson(doc.at("root"), nodes);
    return RegressionTree(std::move(nodes), doc.at("depth_drawn").get<int>());
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed tree: ") + e.what());
  } catch (const ContractViolation& e) {
    throw IoError(std::string("invalid tree: ") + e.what());
  }
}

json TreeConfigToJson(const TreeConfig& config) {
  return json{{"max_depth", config.max_depth},
              {"min_leaf_size", config.min_leaf_size},
              {"feature_fraction", config.feature_fraction}};
}

TreeConfig TreeConfigFromJson(const json& doc) {
  TreeConfig config;
  config.max_depth = doc.at("max_depth").get<int>();
  config.min_leaf_size = doc.at("min_leaf_size").get<std::size_t>();
  config.feature_fraction = doc.at("feature_fraction").get<double>();
  return config;
}

}  // namespace randepth
