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

#include "randepth/dataset.h"

#include <cmath>
#include <utility>

#include "randepth/error.h"

namespace randepth {

Dataset::Dataset(std::size_t num_rows, std::size_t num_features,
                 std::span<const double> row_major_features,
                 std::vector<double> target,
                 std::vector<std::string> column_names)
    : num_features_(num_features),
      target_(std::move(target)),
      column_names_(std::move(column_names)) {
  Require(num_rows >= 1, "dataset needs at least one row");
  Require(num_features >= 1, "dataset needs at least one feature");
  Require(target_.size() == num_rows,
          "target length must equal the number of feature rows");
  Require(row_major_features.size() == num_rows * num_features,
          "feature matrix size does not match N*p");
  if (column_names_.empty()) {
    for (std::size_t j = 0; j < num_features; ++j) {
      column_names_.push_back("x" + std::to_string(j + 1));
    }
  }
  Require(column_names_.size() == num_features,
          "column_names length must equal p");

  columns_.resize(num_rows * num_features);
  for (std::size_t i = 0; i < num_rows; ++i) {
    for (std::size_t j = 0; j < num_features; ++j) {
      const double v = row_major_features[i * num_features + j];
      Require(std::isfinite(v), "non-finite feature value");
      columns_[j * num_rows + i] = v;
    }
    Require(std::isfinite(target_[i]), "non-finite target value");
  }
}

std::vector<double> Dataset::row(std::size_t r) const {
  std::vector<double> out(num_features_);
  for (std::size_t j = 0; j < num_features_; ++j) out[j] = feature(r, j);
  return out;
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  std::vector<double> rows;
  rows.reserve(indices.size() * num_features_);
  std::vector<double> y;
  y.reserve(indices.size());
  for (const std::size_t i : indices) {
    Require(i < num_rows(), "subset index out of range");
    for (std::size_t j = 0; j < num_features_; ++j) {
      rows.push_back(feature(i, j));
    }
    y.push_back(target_[i]);
  }
  return Dataset(indices.size(), num_features_, rows, std::move(y),
                 column_names_);
}

Dataset Dataset::WithTarget(std::vector<double> target) const {
  Require(target.size() == num_rows(), "target length mismatch");
  for (const double v : target) Require(std::isfinite(v), "non-finite target");
  Dataset out = *this;
  out.target_ = std::move(target);
  return out;
}

}  // namespace randepth
