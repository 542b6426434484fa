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
#include <numeric>
#include <utility>

#include "randepth/error.h"
#include "randepth/search.h"

namespace randepth::tuning {
namespace {

constexpr double kGeneEpsilon = 1e-14;

struct Ranked {
  std::vector<int> rank;
  std::vector<double> crowding;
};

Ranked RankPopulation(const std::vector<Candidate>& pop) {
  Ranked out;
  out.rank = NondominatedRanks(pop);
  out.crowding.assign(pop.size(), 0.0);
  const int levels = pop.empty()
                         ? 0
                         : *std::max_element(out.rank.begin(), out.rank.end());
  for (int level = 0; level <= levels; ++level) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (out.rank[i] == level) front.push_back(i);
    }
    const std::vector<double> d = CrowdingDistance(pop, front);
    for (std::size_t k = 0; k < front.size(); ++k) out.crowding[front[k]] = d[k];
  }
  return out;
}

class Variation {
 public:
  Variation(const ParamSpace& space, const Nsga2Options& options,
            Engine& engine)
      : space_(space), options_(options), engine_(engine) {
    mutation_probability_ =
        options.mutation_probability > 0.0
            ? options.mutation_probability
            : 1.0 / static_cast<double>(std::max<std::size_t>(1, space.size()));
  }

  std::pair<ParamValues, ParamValues> Crossover(const ParamValues& a,
                                                const ParamValues& b) {
    ParamValues c1 = a;
    ParamValues c2 = b;
    if (Uniform01(engine_) > options_.crossover_probability) return {c1, c2};
    for (const auto& p : space_.params()) {
      if (Uniform01(engine_) > 0.5) continue;
      if (p.kind != ParamKind::kReal) {
        std::swap(c1[p.name], c2[p.name]);
        continue;
      }
      auto [x1, x2] = Sbx(p, a.at(p.name), b.at(p.name));
      c1[p.name] = x1;
      c2[p.name] = x2;
    }
    return {c1, c2};
  }

  void Mutate(ParamValues& values) {
    for (const auto& p : space_.params()) {
      if (Uniform01(engine_) >= mutation_probability_) continue;
      if (p.kind == ParamKind::kReal) {
        values[p.name] = Polynomial(p, values[p.name]);
      } else {
        const auto span = static_cast<std::uint64_t>(p.upper - p.lower) + 1;
        values[p.name] =
            p.lower + static_cast<double>(UniformIndex(engine_, span));
      }
    }
  }

 private:
  // Bounded simulated binary crossover.
  std::pair<double, double> Sbx(const ParamDescriptor& p, double a, double b) {
    if (std::abs(a - b) <= kGeneEpsilon) return {a, b};
    const double eta = options_.sbx_distribution_index;
    const double y1 = std::min(a, b);
    const double y2 = std::max(a, b);
    const double lo = p.lower;
    const double hi = p.upper;
    const double u = Uniform01(engine_);
    auto spread = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      return u <= 1.0 / alpha
                 ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                 : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    };
    const double beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
    double c1 = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
    const double beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
    double c2 = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));
    c1 = std::clamp(c1, lo, hi);
    c2 = std::clamp(c2, lo, hi);
    if (Uniform01(engine_) <= 0.5) std::swap(c1, c2);
    return {c1, c2};
  }

  // Bounded polynomial mutation.
  double Polynomial(const ParamDescriptor& p, double y) {
    const double lo = p.lower;
    const double hi = p.upper;
    if (!(hi > lo)) return y;
    const double eta = options_.mutation_distribution_index;
    const double delta1 = (y - lo) / (hi - lo);
    const double delta2 = (hi - y) / (hi - lo);
    const double r = Uniform01(engine_);
    const double power = 1.0 / (eta + 1.0);
    double deltaq;
    if (r < 0.5) {
      const double val = 2.0 * r + (1.0 - 2.0 * r) *
                                       std::pow(1.0 - delta1, eta + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) *
                                               std::pow(1.0 - delta2, eta + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    return std::clamp(y + deltaq * (hi - lo), lo, hi);
  }

  const ParamSpace& space_;
  const Nsga2Options& options_;
  Engine& engine_;
  double mutation_probability_ = 0.0;
};

std::size_t Tournament(const Ranked& ranked, std::size_t size, Engine& engine) {
  const std::size_t a = UniformIndex(engine, size);
  const std::size_t b = UniformIndex(engine, size);
  if (ranked.rank[a] != ranked.rank[b]) {
    return ranked.rank[a] < ranked.rank[b] ? a : b;
  }
  return ranked.crowding[b] > ranked.crowding[a] ? b : a;
}

std::vector<Candidate> SelectSurvivors(std::vector<Candidate> merged,
                                       std::size_t target) {
  const std::vector<int> rank = NondominatedRanks(merged);
  std::vector<Candidate> next;
  next.reserve(target);
  for (int level = 0; next.size() < target; ++level) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (rank[i] == level) front.push_back(i);
    }
    if (front.empty()) break;
    if (next.size() + front.size() <= target) {
      for (const std::size_t i : front) next.push_back(merged[i]);
      continue;
    }
    const std::vector<double> crowding = CrowdingDistance(merged, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return crowding[a] > crowding[b];
    });
    for (std::size_t k = 0; next.size() < target; ++k) {
      next.push_back(merged[front[order[k]]]);
    }
  }
  return next;
}

}  // namespace

Nsga2Result Nsga2(const ParamSpace& space, const Evaluator& evaluator,
                  const Nsga2Options& options, const RngStream& rng) {
  Require(options.population >= 4 && options.population % 2 == 0,
          "Nsga2: population must be even and >= 4");
  Require(space.size() >= 1, "Nsga2: empty parameter space");
  Nsga2Result result;

  auto evaluate = [&](const ParamValues& params, int generation) {
    const std::size_t index = result.evaluations++;
    Candidate c = evaluator(params, rng.Child("eval", index));
    c.params = params;
    c.index = index;
    c.generation = generation;
    result.archive.push_back(c);
    return c;
  };

  std::vector<Candidate> population;
  population.reserve(options.population);
  for (std::size_t i = 0; i < options.population; ++i) {
    Engine engine = rng.Child("init", i).engine();
    population.push_back(evaluate(space.Draw(engine), 0));
  }

  for (std::size_t g = 1; g <= options.generations; ++g) {
    Engine engine = rng.Child("generation", g).engine();
    Variation variation(space, options, engine);
    const Ranked ranked = RankPopulation(population);
    std::vector<Candidate> merged = population;
    while (merged.size() < 2 * options.population) {
      const auto& a = population[Tournament(ranked, population.size(), engine)];
      const auto& b = population[Tournament(ranked, population.size(), engine)];
      auto [c1, c2] = variation.Crossover(a.params, b.params);
      variation.Mutate(c1);
      variation.Mutate(c2);
      for (auto* child : {&c1, &c2}) {
        for (const auto& p : space.params()) {
          (*child)[p.name] = space.Repair(p, (*child)[p.name]);
        }
      }
      merged.push_back(evaluate(c1, static_cast<int>(g)));
      merged.push_back(evaluate(c2, static_cast<int>(g)));
    }
    population = SelectSurvivors(std::move(merged), options.population);
  }

  result.front = NondominatedFilter(result.archive);
  return result;
}

}  // namespace randepth::tuning
