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

#include "randepth/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "randepth/boost.h"
#include "randepth/csv.h"
#include "randepth/error.h"
#include "randepth/forest.h"
#include "randepth/pareto.h"
#include "randepth/sampling.h"
#include "randepth/tree.h"

namespace randepth::experiments {
namespace {

using tuning::Candidate;
using tuning::LearnerFamily;
using tuning::ParamValues;

const std::vector<std::string>& ParamColumns() {
  static const std::vector<std::string> columns = {
      tuning::kNumTrees,        tuning::kNumIterations,
      tuning::kLearningRate,    tuning::kObsFraction,
      tuning::kWithReplacement, tuning::kFeatureFraction};
  return columns;
}

std::string ParamCells(const ParamValues& params) {
  std::string out;
  for (const auto& name : ParamColumns()) {
    const auto it = params.find(name);
    if (it != params.end()) out += FormatReal(it->second);
    out += ',';
  }
  return out;
}

std::string ParamHeader() {
  std::string out;
  for (const auto& name : ParamColumns()) out += name + ',';
  return out;
}

std::string CsvSafe(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return text;
}

std::ofstream OpenOutput(const std::string& dir, const std::string& name) {
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.precision(17);
  return out;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double MedianOf(std::vector<double> values) {
  return friedman::Median(std::move(values));
}

std::size_t EvenAtLeastFour(double value) {
  auto n = static_cast<std::size_t>(std::llround(value));
  if (n % 2) ++n;
  return std::max<std::size_t>(4, n);
}

}  // namespace

tuning::LearnerSetup BaseSetup(LearnerFamily family,
                               const LearnerDefaults& defaults) {
  tuning::LearnerSetup setup;
  setup.family = family;
  setup.forest.tree.max_depth = defaults.max_depth;
  setup.forest.tree.min_leaf_size = defaults.forest_min_leaf;
  setup.boost.tree.max_depth = defaults.max_depth;
  setup.boost.tree.min_leaf_size = defaults.boost_min_leaf;
  return setup;
}

Problem MakeProblem(std::uint64_t master_seed, std::size_t index,
                    std::size_t n, std::size_t p_signal, std::size_t p_noise) {
  const RngStream stream = RngStream(master_seed).Child("dataset", index);
  const std::uint64_t spec_seed = stream.Child("spec").key();
  Problem problem;
  problem.spec = friedman::SampleSpecFromSeed(p_signal, p_noise, spec_seed);
  problem.train = friedman::GenerateFromSeeds(problem.spec, n, spec_seed,
                                              stream.Child("train").key());
  problem.test = friedman::GenerateFromSeeds(
      problem.spec, std::max<std::size_t>(1, n / 2), spec_seed,
      stream.Child("test").key());
  return problem;
}

// ---------------------------------------------------------------------------

Exp1Config ScaledExp1(double scale) {
  Require(scale > 0.0 && scale <= 1.0, "scale must lie in (0, 1]");
  Exp1Config config;
  config.n = std::max<std::size_t>(
      10, static_cast<std::size_t>(std::llround(10000 * scale)));
  config.generations =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(10 * scale)));
  config.population = EvenAtLeastFour(80 * scale);
  config.max_iterations = std::max<long>(1, std::lround(1000 * scale));
  config.max_trees = std::max<long>(1, std::lround(1000 * scale));
  return config;
}

std::optional<double> Exp1Cell::best_mse() const {
  if (!error.empty() || result.front.members.empty()) return std::nullopt;
  double best = result.front.members.front().mse;
  for (const auto& c : result.front.members) best = std::min(best, c.mse);
  return best;
}

std::optional<double> Exp1Result::BestMseDifference(
    std::size_t dataset, std::size_t p_noise, LearnerFamily family) const {
  std::optional<double> off;
  std::optional<double> on;
  for (const auto& cell : cells) {
    if (cell.dataset != dataset || cell.p_noise != p_noise ||
        cell.family != family) {
      continue;
    }
    (cell.random_depth ? on : off) = cell.best_mse();
  }
  if (!off || !on) return std::nullopt;
  return *off - *on;
}

Exp1Result RunExp1(const Exp1Config& config, std::ostream* log) {
  Exp1Result result;
  result.config = config;
  tuning::Nsga2Options options;
  options.generations = config.generations;
  options.population = config.population;

  for (std::size_t d = 0; d < config.n_datasets; ++d) {
    for (const std::size_t p_noise : config.p_noise) {
      const Problem problem =
          MakeProblem(config.seed, d, config.n, config.p_signal, p_noise);
      for (const LearnerFamily family : config.families) {
        const tuning::ParamSpace space =
            family == LearnerFamily::kBoost
                ? tuning::BoostSearchSpace(config.max_iterations)
                : tuning::ForestSearchSpace(config.max_trees);
        const RngStream stream = RngStream(config.seed)
                                     .Child("exp1")
                                     .Child(d)
                                     .Child(p_noise)
                                     .Child(tuning::FamilyName(family));
        for (const bool random_depth : {false, true}) {
          Exp1Cell cell;
          cell.dataset = d;
          cell.p_noise = p_noise;
          cell.family = family;
          cell.random_depth = random_depth;
          const tuning::LearnerSetup base =
              BaseSetup(family, config.learners).WithRandomDepth(random_depth);
          const tuning::Evaluator evaluator =
              [&](const ParamValues& params, const RngStream& rng) {
                return tuning::EvaluateHoldout(params, base,
                                               problem.train.dataset,
                                               problem.test.dataset, rng);
              };
          try {
            cell.result = tuning::Nsga2(space, evaluator, options, stream);
            if (cell.result.front.members.empty()) {
              cell.error = "no valid candidate";
            }
          } catch (const std::exception& e) {
            cell.error = e.what();
          }
          if (log) {
            *log << "exp1 dataset=" << d + 1 << " p_noise=" << p_noise
                 << " family=" << tuning::FamilyName(family)
                 << " random_depth=" << random_depth << " front="
                 << cell.result.front.members.size();
            if (const auto best = cell.best_mse()) *log << " best_mse=" << *best;
            if (!cell.error.empty()) *log << " error=" << cell.error;
            *log << '\n';
          }
          result.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return result;
}

std::vector<std::string> WriteExp1(const Exp1Result& result,
                                   const std::string& out_dir,
                                   const std::string& manifest_name) {
  std::vector<std::string> files = {"exp1_candidates.csv", "exp1_fronts.csv"};
  std::ofstream candidates = OpenOutput(out_dir, files[0]);
  std::ofstream fronts = OpenOutput(out_dir, files[1]);
  const std::string header =
      "dataset,p_noise,family,random_depth,generation,index," + ParamHeader() +
      "mse,fit_seconds,total_splits,rank,on_front,valid,manifest\n";
  candidates << header;
  fronts << header;

  for (const auto& cell : result.cells) {
    const auto& archive = cell.result.archive;
    const std::vector<int> ranks = tuning::NondominatedRanks(archive);
    std::vector<bool> on_front(archive.size(), false);
    for (const auto& member : cell.result.front.members) {
      for (std::size_t i = 0; i < archive.size(); ++i) {
        if (archive[i].index == member.index) on_front[i] = true;
      }
    }
    for (std::size_t i = 0; i < archive.size(); ++i) {
      const Candidate& c = archive[i];
      std::ostringstream row;
      row.precision(17);
      row << cell.dataset + 1 << ',' << cell.p_noise << ','
          << tuning::FamilyName(cell.family) << ',' << cell.random_depth << ','
          << c.generation << ',' << c.index << ',' << ParamCells(c.params)
          << FormatReal(c.mse) << ',' << FormatReal(c.fit_seconds) << ','
          << c.total_splits << ',' << ranks[i] << ',' << on_front[i] << ','
          << c.valid << ',' << manifest_name << '\n';
      candidates << row.str();
      if (on_front[i]) fronts << row.str();
    }
  }

  for (const LearnerFamily family : result.config.families) {
    const std::string name = std::string("exp1_best_mse_difference_") +
                             tuning::FamilyName(family) + ".csv";
    std::ofstream table = OpenOutput(out_dir, name);
    table << "p_noise";
    for (std::size_t d = 0; d < result.config.n_datasets; ++d) {
      table << ",dataset_" << d + 1;
    }
    table << ",manifest\n";
    for (const std::size_t p_noise : result.config.p_noise) {
      table << p_noise;
      for (std::size_t d = 0; d < result.config.n_datasets; ++d) {
        table << ',';
        if (const auto diff = result.BestMseDifference(d, p_noise, family)) {
          table << FormatReal(*diff);
        } else {
          table << "NA";
        }
      }
      table << ',' << manifest_name << '\n';
    }
    files.push_back(name);
  }
  return files;
}

// ---------------------------------------------------------------------------

Exp2Config ScaledExp2(double scale) {
  Require(scale > 0.0 && scale <= 1.0, "scale must lie in (0, 1]");
  Exp2Config config;
  config.n = std::max<std::size_t>(
      10, static_cast<std::size_t>(std::llround(10000 * scale)));
  config.n_datasets =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(50 * scale)));
  config.k =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(50 * scale)));
  return config;
}

const Exp2Outcome* Exp2Dataset::Find(const std::string& variant) const {
  for (const auto& o : outcomes) {
    if (o.variant == variant) return &o;
  }
  return nullptr;
}

std::optional<double> Exp2Result::MedianRuntimeRatio(
    LearnerFamily family) const {
  const std::string off = family == LearnerFamily::kBoost ? "mart" : "rf";
  const std::string on = family == LearnerFamily::kBoost ? "rb" : "r2f";
  std::vector<double> ratios;
  for (const auto& d : datasets) {
    const Exp2Outcome* a = d.Find(off);
    const Exp2Outcome* b = d.Find(on);
    if (a && b && a->ok && b->ok && a->tuning_seconds > 0.0) {
      ratios.push_back(b->tuning_seconds / a->tuning_seconds);
    }
  }
  if (ratios.empty()) return std::nullopt;
  return MedianOf(std::move(ratios));
}

namespace {

// Search plus final refit; `final_random_depth` may differ from the search
// setting (hybrid protocol).
Exp2Outcome TuneAndFit(const std::string& variant,
                       const tuning::LearnerSetup& base,
                       const tuning::ParamSpace& space, const Problem& problem,
                       const Exp2Config& config, const RngStream& stream,
                       bool search_random_depth, bool final_random_depth,
                       const tuning::SearchResult* shared_search) {
  Exp2Outcome out;
  out.variant = variant;
  out.family = base.family;
  out.random_depth_tuning = search_random_depth;
  out.random_depth_final = final_random_depth;
  const auto start = std::chrono::steady_clock::now();
  try {
    tuning::SearchResult own;
    const tuning::SearchResult* search = shared_search;
    if (!search) {
      own = tuning::RandomSearch(
          space,
          tuning::MakeCvEvaluator(base.WithRandomDepth(search_random_depth),
                                  problem.train.dataset, config.scheme),
          config.k, stream);
      search = &own;
    }
    out.evaluated = search->candidates.size();
    out.search_seconds = search->wall_seconds;
    for (const auto& c : search->candidates) {
      out.candidate_fit_seconds += c.fit_seconds;
      out.search_splits += c.total_splits;
    }
    if (!search->best) throw std::runtime_error(search->failure);
    out.best_params = search->best->params;
    out.best_cv_mse = search->best->mse;
    const tuning::LearnerSetup final_setup =
        tuning::ApplyParams(base.WithRandomDepth(final_random_depth),
                            out.best_params)
            .WithSeed(stream.Child("final").key());
    const tuning::FittedLearner model =
        tuning::FitLearner(final_setup, problem.train.dataset);
    out.test_mse = Mse(model.PredictBatch(problem.test.dataset),
                       problem.test.dataset.target());
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.tuning_seconds = Seconds(start);
  if (shared_search) out.tuning_seconds += shared_search->wall_seconds;
  return out;
}

}  // namespace

Exp2Result RunExp2(const Exp2Config& config, std::ostream* log) {
  Exp2Result result;
  result.config = config;
  for (std::size_t d = 0; d < config.n_datasets; ++d) {
    const Problem problem = MakeProblem(config.seed, d, config.n,
                                        config.p_signal, /*p_noise=*/0);
    Exp2Dataset ds;
    ds.dataset = d;
    ds.spec_seed = problem.train.spec_seed;
    ds.data_seed = problem.train.data_seed;
    ds.test_seed = problem.test.data_seed;

    for (const LearnerFamily family : config.families) {
      tuning::LearnerSetup base = BaseSetup(family, config.learners);
      base.forest.n_trees = config.fixed_trees;
      base.boost.n_iterations = config.fixed_trees;
      const tuning::ParamSpace space =
          family == LearnerFamily::kBoost ? tuning::BoostSearchSpace(std::nullopt)
                                          : tuning::ForestSearchSpace(std::nullopt);
      const RngStream stream = RngStream(config.seed)
                                   .Child("exp2")
                                   .Child(d)
                                   .Child(tuning::FamilyName(family));
      const bool boost = family == LearnerFamily::kBoost;
      ds.outcomes.push_back(TuneAndFit(boost ? "mart" : "rf", base, space,
                                       problem, config, stream, false, false,
                                       nullptr));

      // Random-depth search, kept so the hybrid variant can reuse it.
      const auto start = std::chrono::steady_clock::now();
      tuning::SearchResult on_search = tuning::RandomSearch(
          space,
          tuning::MakeCvEvaluator(base.WithRandomDepth(true),
                                  problem.train.dataset, config.scheme),
          config.k, stream);
      on_search.wall_seconds = Seconds(start);
      ds.outcomes.push_back(TuneAndFit(boost ? "rb" : "r2f", base, space,
                                       problem, config, stream, true, true,
                                       &on_search));
      if (!boost && config.hybrid) {
        ds.outcomes.push_back(TuneAndFit("hybrid", base, space, problem,
                                         config, stream, true, false,
                                         &on_search));
      }
    }
    if (log) {
      *log << "exp2 dataset=" << d + 1;
      for (const auto& o : ds.outcomes) {
        *log << ' ' << o.variant << "(cv=" << o.best_cv_mse
             << " test=" << o.test_mse << " t=" << o.tuning_seconds << "s)";
      }
      *log << '\n';
    }
    result.datasets.push_back(std::move(ds));
  }
  return result;
}

std::vector<std::string> WriteExp2(const Exp2Result& result,
                                   const std::string& out_dir,
                                   const std::string& manifest_name) {
  std::vector<std::string> files = {"exp2_outcomes.csv", "exp2_differences.csv",
                                    "exp2_summary.csv"};
  std::ofstream outcomes = OpenOutput(out_dir, files[0]);
  outcomes << "dataset,spec_seed,data_seed,test_seed,family,variant,"
              "random_depth_tuning,random_depth_final,"
           << ParamHeader()
           << "best_cv_mse,test_mse,search_seconds,tuning_seconds,"
              "candidate_fit_seconds,search_splits,evaluated,ok,error,manifest\n";
  for (const auto& d : result.datasets) {
    for (const auto& o : d.outcomes) {
      outcomes << d.dataset + 1 << ',' << d.spec_seed << ',' << d.data_seed
               << ',' << d.test_seed << ',' << tuning::FamilyName(o.family)
               << ',' << o.variant << ',' << o.random_depth_tuning << ','
               << o.random_depth_final << ',' << ParamCells(o.best_params)
               << FormatReal(o.best_cv_mse) << ',' << FormatReal(o.test_mse)
               << ',' << FormatReal(o.search_seconds) << ','
               << FormatReal(o.tuning_seconds) << ','
               << FormatReal(o.candidate_fit_seconds) << ',' << o.search_splits
               << ',' << o.evaluated << ',' << o.ok << ',' << CsvSafe(o.error)
               << ',' << manifest_name << '\n';
    }
  }

  struct Comparison {
    const char* name;
    LearnerFamily family;
    const char* off;
    const char* on;
  };
  const Comparison comparisons[] = {
      {"rb_vs_mart", LearnerFamily::kBoost, "mart", "rb"},
      {"r2f_vs_rf", LearnerFamily::kForest, "rf", "r2f"},
      {"hybrid_vs_rf", LearnerFamily::kForest, "rf", "hybrid"}};

  // Positive deltas mean the random-depth variant did better.
  std::ofstream differences = OpenOutput(out_dir, files[1]);
  differences << "dataset,family,comparison,delta_test_mse,"
                 "delta_tuning_seconds,runtime_ratio,manifest\n";
  std::ofstream summary = OpenOutput(out_dir, files[2]);
  summary << "family,comparison,datasets,median_delta_test_mse,"
             "median_runtime_ratio,manifest\n";
  for (const auto& cmp : comparisons) {
    std::vector<double> deltas;
    std::vector<double> ratios;
    for (const auto& d : result.datasets) {
      const Exp2Outcome* off = d.Find(cmp.off);
      const Exp2Outcome* on = d.Find(cmp.on);
      if (!off || !on || !off->ok || !on->ok) continue;
      const double delta = off->test_mse - on->test_mse;
      const double ratio = on->tuning_seconds / off->tuning_seconds;
      deltas.push_back(delta);
      ratios.push_back(ratio);
      differences << d.dataset + 1 << ',' << tuning::FamilyName(cmp.family)
                  << ',' << cmp.name << ',' << FormatReal(delta) << ','
                  << FormatReal(off->tuning_seconds - on->tuning_seconds)
                  << ',' << FormatReal(ratio) << ',' << manifest_name << '\n';
    }
    if (deltas.empty()) continue;
    summary << tuning::FamilyName(cmp.family) << ',' << cmp.name << ','
            << deltas.size() << ',' << FormatReal(MedianOf(deltas)) << ','
            << FormatReal(MedianOf(ratios)) << ',' << manifest_name << '\n';
  }
  return files;
}

// ---------------------------------------------------------------------------

bool RunSelfTest(std::ostream& out) {
  bool all_ok = true;
  const auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    all_ok = all_ok && ok;
  };
  const auto guarded = [&](const std::string& name, auto&& body) {
    try {
      check(name, body());
    } catch (const std::exception& e) {
      out << "FAIL " << name << " (" << e.what() << ")\n";
      all_ok = false;
    }
  };

  guarded("split_toy", [] {
    const std::vector<double> x = {1, 2, 3, 4};
    const Dataset data(4, 1, x, {0, 0, 1, 1});
    const std::vector<std::size_t> rows = {0, 1, 2, 3};
    const std::vector<std::size_t> features = {0};
    const auto split = BestSplit(data, data.target(), rows, features, 1);
    return split && split->feature == 0 && split->threshold == 2.5 &&
           split->sse_total == 0.0;
  });

  guarded("relative_splits", [] {
    return std::abs(ExpectedRelativeSplits(1) - 1.0) < 1e-15 &&
           std::abs(ExpectedRelativeSplits(4) - 0.46875) < 1e-15;
  });

  const Problem problem = MakeProblem(7, 0, 300, 4, 2);
  guarded("generator_deterministic", [&] {
    const Problem again = MakeProblem(7, 0, 300, 4, 2);
    return again.train.dataset.target()[17] ==
               problem.train.dataset.target()[17] &&
           again.test.dataset.feature(5, 5) == problem.test.dataset.feature(5, 5);
  });

  guarded("forest_parallel_matches_serial", [&] {
    ForestConfig config;
    config.n_trees = 12;
    config.random_depth = true;
    config.tree.feature_fraction = 0.5;
    config.seed = 3;
    const ForestModel a = FitForest(problem.train.dataset, config);
    const ForestModel b = FitForestSerial(problem.train.dataset, config);
    return a.PredictBatch(problem.test.dataset) ==
           b.PredictBatchSerial(problem.test.dataset);
  });

  guarded("boost_staged_matches_predict", [&] {
    BoostConfig config;
    config.n_iterations = 15;
    config.obs_fraction = 0.7;
    config.random_depth = true;
    config.seed = 5;
    const BoostModel model = FitBoost(problem.train.dataset, config);
    const auto staged = model.StagedPredict(problem.test.dataset);
    return staged.size() == 16 &&
           staged.back() == model.PredictBatch(problem.test.dataset);
  });

  guarded("pareto_filter", [] {
    std::vector<tuning::Candidate> points(4);
    const double objectives[4][2] = {{1, 4}, {2, 2}, {3, 3}, {4, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
      points[i].mse = objectives[i][0];
      points[i].fit_seconds = objectives[i][1];
      points[i].index = i;
    }
    return tuning::NondominatedFilter(points).members.size() == 3;
  });

  return all_ok;
}

}  // namespace randepth::experiments
