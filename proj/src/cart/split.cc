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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "randepth/error.h"
#include "randepth/tree.h"

namespace randepth {
namespace {

// Rows x features below which the parallel search stays on one thread.
constexpr std::size_t kParallelWorkThreshold = 1 << 15;

struct ThresholdScore {
  double threshold;
  double sse;
  std::size_t left_count;
};

// All feasible thresholds of one feature, ascending, with their children SSE
// computed from prefix sums of the centred response.
std::vector<ThresholdScore> ScanFeature(const Dataset& data,
                                        std::span<const double> response,
                                        std::span<const std::size_t> rows,
                                        std::size_t feature, double mean,
                                        std::size_t min_leaf_size) {
  const std::size_t n = rows.size();
  std::vector<std::pair<double, double>> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i] = {data.feature(rows[i], feature), response[rows[i]] - mean};
  }
  std::sort(points.begin(), points.end());

  double total_sum = 0.0;
  double total_sq = 0.0;
  for (const auto& [x, c] : points) {
    total_sum += c;
    total_sq += c * c;
  }

  std::vector<ThresholdScore> scores;
  double left_sum = 0.0;
  double left_sq = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    left_sum += points[i].second;
    left_sq += points[i].second * points[i].second;
    const std::size_t left_count = i + 1;
    const std::size_t right_count = n - left_count;
    if (left_count < min_leaf_size) continue;
    if (right_count < min_leaf_size) break;
    const double lo = points[i].first;
    const double hi = points[i + 1].first;
    if (!(lo < hi)) continue;
    double threshold = lo + (hi - lo) / 2.0;
    if (!(threshold < hi)) threshold = lo;

    const double right_sum = total_sum - left_sum;
    const double right_sq = total_sq - left_sq;
    const double sse_left =
        left_sq - left_sum * left_sum / static_cast<double>(left_count);
    const double sse_right =
        right_sq - right_sum * right_sum / static_cast<double>(right_count);
    scores.push_back({threshold, std::max(0.0, sse_left) +
                                     std::max(0.0, sse_right),
                      left_count});
  }
  return scores;
}

double TwoPassSse(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sse = 0.0;
  for (const double v : values) sse += (v - mean) * (v - mean);
  return sse;
}

std::optional<SplitCandidate> SelectSplit(
    const Dataset& data, std::span<const double> response,
    std::span<const std::size_t> rows,
    std::span<const std::size_t> candidate_features,
    const std::vector<std::vector<ThresholdScore>>& per_feature) {
  double best_sse = std::numeric_limits<double>::infinity();
  for (const auto& scores : per_feature) {
    for (const auto& s : scores) best_sse = std::min(best_sse, s.sse);
  }
  if (!std::isfinite(best_sse)) return std::nullopt;

  std::vector<double> node_values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    node_values[i] = response[rows[i]];
  }
  const double parent_sse = TwoPassSse(node_values);
  const double tolerance = kSseRelativeTieTolerance * parent_sse;
  if (!(best_sse < parent_sse - tolerance)) return std::nullopt;

  // First (feature, threshold) in ascending order within the tie band.
  for (std::size_t k = 0; k < per_feature.size(); ++k) {
    for (const auto& s : per_feature[k]) {
      if (s.sse > best_sse + tolerance) continue;
      SplitCandidate out;
      out.feature = candidate_features[k];
      out.threshold = s.threshold;
      std::vector<double> left;
      std::vector<double> right;
      for (const std::size_t r : rows) {
        (data.feature(r, out.feature) <= out.threshold ? left : right)
            .push_back(response[r]);
      }
      out.left_count = left.size();
      out.right_count = right.size();
      out.sse_total = TwoPassSse(left) + TwoPassSse(right);
      return out;
    }
  }
  return std::nullopt;
}

void CheckSplitInputs(std::span<const double> response,
                      std::span<const std::size_t> rows,
                      std::span<const std::size_t> candidate_features,
                      std::size_t min_leaf_size, const Dataset& data) {
  Require(!candidate_features.empty(), "BestSplit: empty candidate set");
  Require(std::is_sorted(candidate_features.begin(), candidate_features.end()),
          "BestSplit: candidate features must be sorted");
  Require(candidate_features.back() < data.num_features(),
          "BestSplit: candidate feature out of range");
  Require(response.size() == data.num_rows(),
          "BestSplit: response length must equal dataset rows");
  Require(min_leaf_size >= 1, "BestSplit: min_leaf_size must be >= 1");
  (void)rows;
}

double MeanOver(std::span<const double> response,
                std::span<const std::size_t> rows) {
  double sum = 0.0;
  for (const std::size_t r : rows) sum += response[r];
  return sum / static_cast<double>(rows.size());
}

}  // namespace

std::optional<SplitCandidate> BestSplitSerial(
    const Dataset& data, std::span<const double> response,
    std::span<const std::size_t> rows,
    std::span<const std::size_t> candidate_features,
    std::size_t min_leaf_size) {
  CheckSplitInputs(response, rows, candidate_features, min_leaf_size, data);
  if (rows.size() < 2) return std::nullopt;
  const double mean = MeanOver(response, rows);
  std::vector<std::vector<ThresholdScore>> per_feature(
      candidate_features.size());
  for (std::size_t k = 0; k < candidate_features.size(); ++k) {
    per_feature[k] = ScanFeature(data, response, rows, candidate_features[k],
                                 mean, min_leaf_size);
  }
  return SelectSplit(data, response, rows, candidate_features, per_feature);
}

std::optional<SplitCandidate> BestSplit(
    const Dataset& data, std::span<const double> response,
    std::span<const std::size_t> rows,
    std::span<const std::size_t> candidate_features,
    std::size_t min_leaf_size) {
  CheckSplitInputs(response, rows, candidate_features, min_leaf_size, data);
  if (rows.size() < 2) return std::nullopt;
  const double mean = MeanOver(response, rows);
  const auto num_candidates = static_cast<std::ptrdiff_t>(
      candidate_features.size());
  std::vector<std::vector<ThresholdScore>> per_feature(
      candidate_features.size());
  const bool parallel =
      rows.size() * candidate_features.size() >= kParallelWorkThreshold;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t k = 0; k < num_candidates; ++k) {
    per_feature[k] = ScanFeature(data, response, rows, candidate_features[k],
                                 mean, min_leaf_size);
  }
  return SelectSplit(data, response, rows, candidate_features, per_feature);
}

}  // namespace randepth
