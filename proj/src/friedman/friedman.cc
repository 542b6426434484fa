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

#include "randepth/friedman.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "randepth/error.h"

namespace randepth::friedman {

int DrawRawTermSize(Engine& engine) {
  std::exponential_distribution<double> exp_rate2(2.0);
  return static_cast<int>(std::floor(1.5 + exp_rate2(engine)));
}

Eigen::MatrixXd RandomOrthonormal(std::size_t n, Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd gaussian(n, n);
  for (Eigen::Index c = 0; c < gaussian.cols(); ++c) {
    for (Eigen::Index r = 0; r < gaussian.rows(); ++r) {
      gaussian(r, c) = normal(engine);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

Spec SampleSpec(std::size_t p_signal, std::size_t p_noise,
                const RngStream& rng) {
  Require(p_signal >= 1, "SampleSpec: p_signal must be >= 1");
  Spec spec;
  spec.p_signal = p_signal;
  spec.p_noise = p_noise;
  for (std::size_t j = 0; j < p_signal; ++j) {
    Engine engine = rng.Child("term", j).engine();
    std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
    std::uniform_real_distribution<double> root_eigen(0.1, 2.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Term term;
    term.coefficient = coefficient(engine);
    const auto size = static_cast<std::size_t>(std::clamp<int>(
        DrawRawTermSize(engine), 1, static_cast<int>(p_signal)));

    std::vector<std::size_t> perm(p_signal);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = 0; i < size; ++i) {
      std::swap(perm[i], perm[i + UniformIndex(engine, p_signal - i)]);
    }
    term.features.assign(perm.begin(), perm.begin() + size);

    term.center.resize(size);
    for (std::size_t l = 0; l < size; ++l) term.center(l) = normal(engine);

    Eigen::VectorXd eigenvalues(size);
    for (std::size_t l = 0; l < size; ++l) {
      const double root = root_eigen(engine);
      eigenvalues(l) = root * root;
    }
    const Eigen::MatrixXd u = RandomOrthonormal(size, engine);
    term.precision = u * eigenvalues.asDiagonal() * u.transpose();
    // Exact symmetry; the product is symmetric only up to rounding.
    term.precision = 0.5 * (term.precision + term.precision.transpose());
    spec.terms.push_back(std::move(term));
  }
  return spec;
}

double EvaluateSignal(const Spec& spec, std::span<const double> x) {
  Require(x.size() >= spec.p_signal, "EvaluateSignal: input too short");
  double total = 0.0;
  Eigen::VectorXd z;
  for (const Term& term : spec.terms) {
    z.resize(static_cast<Eigen::Index>(term.features.size()));
    for (std::size_t l = 0; l < term.features.size(); ++l) {
      z(l) = x[term.features[l]] - term.center(l);
    }
    const double quad = z.dot(term.precision * z);
    total += term.coefficient * std::exp(-0.5 * quad);
  }
  return total;
}

double Median(std::vector<double> values) {
  Require(!values.empty(), "Median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return lower + (upper - lower) / 2.0;
}

std::vector<double> NoisyTarget(std::span<const double> signal,
                                double median_signal, const RngStream& rng) {
  Engine engine = rng.engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> target(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double sd = std::sqrt(std::abs(signal[i] - median_signal));
    // Always consume one normal per row so rows stay aligned across specs.
    const double eps = normal(engine);
    target[i] = sd == 0.0 ? signal[i] : signal[i] + sd * eps;
  }
  return target;
}

GeneratedData Generate(const Spec& spec, std::size_t n, const RngStream& rng) {
  Require(n >= 1, "Generate: n must be >= 1");
  const std::size_t p = spec.num_features();

  // Signal and noise columns come from separate streams, so adding noise
  // columns leaves the signal columns and the target unchanged.
  std::vector<double> features(n * p);
  Engine signal_engine = rng.Child("features").engine();
  Engine noise_column_engine = rng.Child("noise-features").engine();
  // libstdc++ caches the second variate of each pair, so every engine gets
  // its own distribution object.
  std::normal_distribution<double> signal_normal(0.0, 1.0);
  std::normal_distribution<double> noise_column_normal(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      features[i * p + j] = j < spec.p_signal
                                ? signal_normal(signal_engine)
                                : noise_column_normal(noise_column_engine);
    }
  }

  GeneratedData out;
  out.signal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.signal[i] = EvaluateSignal(
        spec, std::span<const double>(features.data() + i * p, p));
  }
  out.median_signal = Median(out.signal);

  std::vector<double> target =
      NoisyTarget(out.signal, out.median_signal, rng.Child("noise"));
  out.dataset = Dataset(n, p, features, std::move(target));
  return out;
}

Spec SampleSpecFromSeed(std::size_t p_signal, std::size_t p_noise,
                        std::uint64_t spec_seed) {
  return SampleSpec(p_signal, p_noise, RngStream(spec_seed).Child("spec"));
}

GeneratedData GenerateFromSeeds(const Spec& spec, std::size_t n,
                                std::uint64_t spec_seed,
                                std::uint64_t data_seed) {
  GeneratedData out = Generate(spec, n, RngStream(data_seed).Child("data"));
  out.spec_seed = spec_seed;
  out.data_seed = data_seed;
  return out;
}

nlohmann::json SpecToJson(const Spec& spec) {
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : spec.terms) {
    std::vector<double> center(t.center.data(), t.center.data() + t.center.size());
    std::vector<std::vector<double>> precision;
    for (Eigen::Index r = 0; r < t.precision.rows(); ++r) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < t.precision.cols(); ++c) {
        row.push_back(t.precision(r, c));
      }
      precision.push_back(std::move(row));
    }
    terms.push_back({{"coefficient", t.coefficient},
                     {"features", t.features},
                     {"center", center},
                     {"precision", precision}});
  }
  return {{"p_signal", spec.p_signal},
          {"p_noise", spec.p_noise},
          {"terms", std::move(terms)}};
}

Spec SpecFromJson(const nlohmann::json& doc) {
  Spec spec;
  spec.p_signal = doc.at("p_signal").get<std::size_t>();
  spec.p_noise = doc.at("p_noise").get<std::size_t>();
  for (const auto& t : doc.at("terms")) {
    Term term;
    term.coefficient = t.at("coefficient").get<double>();
    term.features = t.at("features").get<std::vector<std::size_t>>();
    const auto center = t.at("center").get<std::vector<double>>();
    const auto n = static_cast<Eigen::Index>(center.size());
    term.center = Eigen::Map<const Eigen::VectorXd>(center.data(), n);
    const auto rows = t.at("precision").get<std::vector<std::vector<double>>>();
    Require(static_cast<Eigen::Index>(rows.size()) == n,
            "SpecFromJson: precision shape mismatch");
    term.precision.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      Require(static_cast<Eigen::Index>(rows[r].size()) == n,
              "SpecFromJson: precision shape mismatch");
      for (Eigen::Index c = 0; c < n; ++c) term.precision(r, c) = rows[r][c];
    }
    spec.terms.push_back(std::move(term));
  }
  return spec;
}

}  // namespace randepth::friedman
