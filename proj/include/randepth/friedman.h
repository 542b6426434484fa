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

#ifndef RANDEPTH_FRIEDMAN_H_
#define RANDEPTH_FRIEDMAN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "randepth/dataset.h"
#include "randepth/rng.h"

namespace randepth::friedman {

// One additive term a * exp(-1/2 (z - mu)^T V (z - mu)), z = x[features].
struct Term {
  double coefficient = 0.0;
  std::vector<std::size_t> features;
  Eigen::VectorXd center;
  Eigen::MatrixXd precision;
};

// Frozen random draws defining one target function F*. Only the first
// p_signal columns can influence F*; the p_noise trailing columns never do.
struct Spec {
  std::size_t p_signal = 0;
  std::size_t p_noise = 0;
  std::vector<Term> terms;

  std::size_t num_features() const { return p_signal + p_noise; }
};

struct GeneratedData {
  Dataset dataset;
  std::vector<double> signal;
  double median_signal = 0.0;
  std::uint64_t spec_seed = 0;
  std::uint64_t data_seed = 0;
};

// Raw interaction order floor(1.5 + r), r ~ Exp(rate 2), before clamping.
int DrawRawTermSize(Engine& engine);

// p_signal terms; each with a ~ U[-1, 1], n_j = clamp(floor(1.5 + r), 1,
// p_signal), features = first n_j of a random permutation of the signal
// columns, mu ~ N(0, I), V = U D U^T with U Haar-orthonormal and
// sqrt(d) ~ U[0.1, 2].
Spec SampleSpec(std::size_t p_signal, std::size_t p_noise, const RngStream& rng);

// Haar-distributed orthonormal n x n matrix (QR of a Gaussian matrix with
// the sign of R's diagonal folded into Q).
Eigen::MatrixXd RandomOrthonormal(std::size_t n, Engine& engine);

double EvaluateSignal(const Spec& spec, std::span<const double> x);

double Median(std::vector<double> values);

// y_i = signal_i + sqrt(|signal_i - median_signal|) * z_i, z_i ~ N(0, 1)
// drawn in row order from `rng`.
std::vector<double> NoisyTarget(std::span<const double> signal,
                                double median_signal, const RngStream& rng);

// n rows of i.i.d. N(0, 1) features; y = F*(x) + eps with
// eps ~ N(0, variance |F*(x) - median_i F*(x_i)|), the median taken over
// this sample's own rows.
GeneratedData Generate(const Spec& spec, std::size_t n, const RngStream& rng);

// Seeded entry points used by the CLI and experiments.
Spec SampleSpecFromSeed(std::size_t p_signal, std::size_t p_noise,
                        std::uint64_t spec_seed);
GeneratedData GenerateFromSeeds(const Spec& spec, std::size_t n,
                                std::uint64_t spec_seed,
                                std::uint64_t data_seed);

nlohmann::json SpecToJson(const Spec& spec);
Spec SpecFromJson(const nlohmann::json& doc);

}  // namespace randepth::friedman

#endif  // RANDEPTH_FRIEDMAN_H_
