/*
 * Copyright 2026 The iprp Authors.
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

// Serial reference loop vs the OpenMP trial loop on the desk-scale
// experiment (50 topics x 8 combos x trials).

#include <benchmark/benchmark.h>

#include <string>

#include "iprp/formats.hpp"
#include "iprp/simulation.hpp"
#include "iprp/synthetic.hpp"

namespace {

using namespace iprp;

struct Fixture {
  ProfileSet profiles;
  std::vector<Topic> topics;

  Fixture() {
    profiles = parse_profiles_file(std::string(IPRP_DATA_DIR) + "/default_profiles.txt");
    const auto coll = make_synthetic_collection({});
    const QrelTable qrels(coll.qrels);
    const auto model = fit_relevance_model(calibration_pairs(coll.run, qrels));
    topics = build_topics(coll.run, model, &qrels);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void run(benchmark::State& state, Execution execution) {
  const auto& f = fixture();
  ExperimentOptions opts;
  opts.trials_per_combo = static_cast<int>(state.range(0));
  opts.execution = execution;
  for (auto _ : state) {
    auto report = run_experiment(f.topics, kAllCombos, f.profiles, opts);
    benchmark::DoNotOptimize(report.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.topics.size()) *
                          static_cast<std::int64_t>(kAllCombos.size()) * state.range(0));
}

void BM_ExperimentSerial(benchmark::State& state) { run(state, Execution::Serial); }
void BM_ExperimentParallel(benchmark::State& state) { run(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_ExperimentSerial)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
