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

#include "randepth/pareto.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace randepth::tuning {

bool Dominates(const Candidate& a, const Candidate& b) {
  return a.mse <= b.mse && a.fit_seconds <= b.fit_seconds &&
         (a.mse < b.mse || a.fit_seconds < b.fit_seconds);
}

ParetoFront NondominatedFilter(std::span<const Candidate> candidates) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].valid) order.push_back(i);
  }
  // Sweep by (mse, fit_seconds, input position): a point survives iff its
  // runtime beats every point before it.
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (candidates[a].mse != candidates[b].mse) {
      return candidates[a].mse < candidates[b].mse;
    }
    return candidates[a].fit_seconds < candidates[b].fit_seconds;
  });
  ParetoFront front;
  double best_runtime = std::numeric_limits<double>::infinity();
  for (const std::size_t i : order) {
    if (candidates[i].fit_seconds < best_runtime) {
      best_runtime = candidates[i].fit_seconds;
      front.members.push_back(candidates[i]);
    }
  }
  std::reverse(front.members.begin(), front.members.end());
  return front;
}

std::vector<int> NondominatedRanks(std::span<const Candidate> candidates) {
  const std::size_t n = candidates.size();
  std::vector<int> rank(n, -1);
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (!candidates[i].valid) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !candidates[j].valid) continue;
      if (Dominates(candidates[i], candidates[j])) {
        dominated[i].push_back(j);
      } else if (Dominates(candidates[j], candidates[i])) {
        ++domination_count[i];
      }
    }
    if (domination_count[i] == 0) current.push_back(i);
  }
  int level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (const std::size_t i : current) {
      rank[i] = level;
      for (const std::size_t j : dominated[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++level;
  }
  for (auto& r : rank) {
    if (r < 0) r = level;
  }
  return rank;
}

std::vector<double> CrowdingDistance(std::span<const Candidate> candidates,
                                     std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(),
              std::numeric_limits<double>::infinity());
    return distance;
  }
  auto add_objective = [&](auto objective) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return objective(candidates[front[a]]) < objective(candidates[front[b]]);
    });
    const double lo = objective(candidates[front[order.front()]]);
    const double hi = objective(candidates[front[order.back()]]);
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    if (!(hi > lo)) return;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += (objective(candidates[front[order[k + 1]]]) -
                             objective(candidates[front[order[k - 1]]])) /
                            (hi - lo);
    }
  };
  add_objective([](const Candidate& c) { return c.mse; });
  add_objective([](const Candidate& c) { return c.fit_seconds; });
  return distance;
}

}  // namespace randepth::tuning
