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

#ifndef RANDEPTH_DATASET_H_
#define RANDEPTH_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace randepth {

// Dense numeric learning set: N rows, p feature columns and a real target.
// Features are stored column-major so split search can scan one column
// without striding. Immutable after construction.
class Dataset {
 public:
  Dataset() = default;

  // `features` is row-major N*p. Throws ContractViolation on empty input,
  // shape mismatch or non-finite entries. Empty `column_names` yields
  // x1..xp.
  Dataset(std::size_t num_rows, std::size_t num_features,
          std::span<const double> row_major_features,
          std::vector<double> target,
          std::vector<std::string> column_names = {});

  std::size_t num_rows() const { return target_.size(); }
  std::size_t num_features() const { return num_features_; }

  double feature(std::size_t row, std::size_t col) const {
    return columns_[col * num_rows() + row];
  }
  std::span<const double> column(std::size_t col) const {
    return {columns_.data() + col * num_rows(), num_rows()};
  }
  std::span<const double> target() const { return target_; }
  const std::vector<std::string>& column_names() const {
    return column_names_;
  }

  std::vector<double> row(std::size_t r) const;

  // Rows at `indices`, in that order (duplicates allowed).
  Dataset Subset(std::span<const std::size_t> indices) const;

  // Same features, new target.
  Dataset WithTarget(std::vector<double> target) const;

 private:
  std::size_t num_features_ = 0;
  std::vector<double> columns_;
  std::vector<double> target_;
  std::vector<std::string> column_names_;
};

}  // namespace randepth

#endif  // RANDEPTH_DATASET_H_
