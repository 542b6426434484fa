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

// OpenMP kernels against their serial references. With OMP_NUM_THREADS=1
// the pairs should time the same; the gap at higher thread counts is the
// parallel speedup.

#include <map>
#include <numeric>
#include <vector>

#include "benchmark/benchmark.h"
#include "randepth/forest.h"
#include "randepth/friedman.h"
#include "randepth/tree.h"

namespace randepth {
namespace {

const friedman::GeneratedData& Data(std::size_t n) {
  static std::map<std::size_t, friedman::GeneratedData> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto spec = friedman::SampleSpecFromSeed(10, 10, 1);
    it = cache.emplace(n, friedman::GenerateFromSeeds(spec, n, 1, 2)).first;
  }
  return it->second;
}

template <bool kParallel>
void BM_BestSplit(benchmark::State& state) {
  const Dataset& d = Data(state.range(0)).dataset;
  std::vector<std::size_t> rows(d.num_rows());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<std::size_t> features(d.num_features());
  std::iota(features.begin(), features.end(), 0);
  for (auto _ : state) {
    auto s = kParallel ? BestSplit(d, d.target(), rows, features, 5)
                       : BestSplitSerial(d, d.target(), rows, features, 5);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_BestSplit<true>)->Arg(2000)->Arg(20000)->Name("BestSplit/omp");
BENCHMARK(BM_BestSplit<false>)->Arg(2000)->Arg(20000)->Name("BestSplit/serial");

ForestConfig BenchForest(bool random_depth) {
  ForestConfig c;
  c.n_trees = 50;
  c.tree = {.max_depth = 5, .min_leaf_size = 5, .feature_fraction = 1.0 / 3.0};
  c.random_depth = random_depth;
  c.seed = 3;
  return c;
}

template <bool kParallel>
void BM_FitForest(benchmark::State& state) {
  const Dataset& d = Data(state.range(0)).dataset;
  const ForestConfig c = BenchForest(state.range(1) != 0);
  for (auto _ : state) {
    auto f = kParallel ? FitForest(d, c) : FitForestSerial(d, c);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_FitForest<true>)
    ->Args({2000, 0})
    ->Args({2000, 1})
    ->Unit(benchmark::kMillisecond)
    ->Name("FitForest/omp");
BENCHMARK(BM_FitForest<false>)
    ->Args({2000, 0})
    ->Args({2000, 1})
    ->Unit(benchmark::kMillisecond)
    ->Name("FitForest/serial");

template <bool kParallel>
void BM_PredictBatch(benchmark::State& state) {
  const Dataset& d = Data(state.range(0)).dataset;
  const ForestModel f = FitForest(Data(2000).dataset, BenchForest(false));
  for (auto _ : state) {
    auto p = kParallel ? f.PredictBatch(d) : f.PredictBatchSerial(d);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PredictBatch<true>)->Arg(20000)->Name("PredictBatch/omp");
BENCHMARK(BM_PredictBatch<false>)->Arg(20000)->Name("PredictBatch/serial");

}  // namespace
}  // namespace randepth

BENCHMARK_MAIN();
