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

// End-to-end acceptance gate. One line per criterion; exit status is the
// number of failures, so ctest fails if any criterion does.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "iprp/calibration.hpp"
#include "iprp/epu.hpp"
#include "iprp/estimation.hpp"
#include "iprp/formats.hpp"
#include "iprp/metrics.hpp"
#include "iprp/random.hpp"
#include "iprp/report.hpp"
#include "iprp/simulation.hpp"
#include "iprp/synthetic.hpp"
#include "support/oracles.hpp"

using namespace iprp;

namespace {

// Pinned tolerances.
constexpr double kDecayTol = 1e-12;
constexpr double kOracleTol = 1e-9;
constexpr double kHandTol = 1e-12;
constexpr double kProbTol = 0.02;
constexpr double kTimeRelTol = 0.05;
constexpr double kSlopeTol = 0.3;
constexpr double kBaselineSeconds = 1.0;
constexpr double kFullRunSeconds = 60.0;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

ProfileSet shipped() {
  return parse_profiles_file(std::string(IPRP_DATA_DIR) + "/default_profiles.txt");
}

// 50 topics x 20 candidates, calibrated on their own qrels.
std::vector<Topic> desk_topics() {
  const auto coll = make_synthetic_collection({});
  const QrelTable qrels(coll.qrels);
  const auto model = fit_relevance_model(calibration_pairs(coll.run, qrels));
  return build_topics(coll.run, model, &qrels);
}

std::string serialize(const ExperimentReport& r) {
  std::ostringstream out;
  write_report_csv(out, r.rows);
  write_trials_csv(out, r.trials);
  return out.str();
}

Outcome baseline_identity() {
  const auto profiles = shipped();
  const auto topics = desk_topics();
  const std::vector<ComboType> combos = {ComboType::Baseline};
  const auto t0 = Clock::now();
  bool ok = true;
  std::string shown;
  for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
    ExperimentOptions opts;
    opts.seed = seed;
    const auto rep = run_experiment(topics, combos, profiles, opts);
    const auto& row = rep.rows.at(0);
    ok = ok && row.rbo.mean == 1.0 && row.rbo.std == 0.0;
    shown = num(row.rbo.mean, 3) + " ± " + num(row.rbo.std, 3);
  }
  const double secs = seconds_since(t0);
  return {ok && shown == "1.000 ± 0.000" && secs < kBaselineSeconds,
          "RBO " + shown + " over 3 seeds x 50 topics x 100 trials in " + num(secs, 3) + " s"};
}

Outcome page_capacity() {
  const auto profiles = shipped();
  auto uniform = [&](CardType card) {
    std::vector<Placement> placed;
    for (int i = 0; i < 20; ++i) {
      ResultItem item;
      item.doc_id = "d" + std::to_string(i);
      item.p_rel = 0.5;
      placed.push_back({item, card});
    }
    return layout_page(RankedList(std::move(placed)), profiles, 12).shown.size();
  };
  const auto ts = uniform(CardType::TS);
  const auto tis = uniform(CardType::TIS);
  return {ts == 4 && tis == 2, "TS " + std::to_string(ts) + " cards, TIS " +
                                   std::to_string(tis) + " cards in 12 rows"};
}

Outcome tbg_half_life() {
  const double half = decay(224.0, 224.0);
  const double one = decay(0.0, 224.0);
  return {std::abs(half - 0.5) <= kDecayTol && std::abs(one - 1.0) <= kDecayTol,
          "decay(224)=" + num(half, 15) + " decay(0)=" + num(one, 15)};
}

Outcome epu_oracle() {
  Rng rng(4);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = oracle::random_profile(rng);
    const double p_rel = uniform01(rng);
    worst = std::max(worst, std::abs(epu_card(p, p_rel) - oracle::epu_card(p, p_rel)));
  }
  const double hand = epu_card(oracle::hand_profile(), 0.5);
  return {worst <= kOracleTol && std::abs(hand - (-0.1)) <= kHandTol,
          "max |diff| " + sci(worst) + " over 1000 profiles; hand case " +
              num(hand, 12)};
}

Outcome epu_list_hand() {
  const std::vector<EpuTerm> three = {{0.5, 2.0}, {0.3, 4.0}, {0.9, 1.0}};
  const double v = epu_list(three);
  return {std::abs(v - 4.35) <= kOracleTol, "epu_list = " + num(v, 12)};
}

Outcome rbo_oracle() {
  Rng rng(6);
  double worst = 0.0;
  auto list = [&](std::size_t len) {
    std::vector<std::string> pool;
    for (int i = 0; i < 25; ++i) pool.push_back("d" + std::to_string(i));
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      std::swap(pool[i], pool[uniform_index(rng, i + 1)]);
    }
    pool.resize(len);
    return pool;
  };
  const double ps[] = {0.8, 0.9, 0.98};
  for (int i = 0; i < 500; ++i) {
    const double p = ps[i % 3];
    const auto a = list(1 + uniform_index(rng, 20));
    const auto b = list(1 + uniform_index(rng, 20));
    worst = std::max(worst, std::abs(rbo(a, b, p) - oracle::rbo_series(a, b, p)));
  }
  const std::vector<std::string> x = {"a", "b", "c"}, y = {"b", "a", "c"};
  const double hand = rbo(x, y, 0.9);
  return {worst <= kOracleTol && num(hand, 4) == "0.9000",
          "max |diff| " + sci(worst) + " over 500 pairs; [a,b,c]/[b,a,c] " +
              num(hand, 4)};
}

Outcome estimation_consistency() {
  const auto truth = shipped();
  const auto est = build_profiles(make_synthetic_annotations(truth, {10000, 150, 42, 0.25}));
  double worst_p = 0.0, worst_t = 0.0;
  for (const auto& [type, t] : truth) {
    const auto& e = est.at(type);
    worst_p = std::max({worst_p, std::abs(e.p_click_rel - t.p_click_rel),
                        std::abs(e.p_skip_nonrel - t.p_skip_nonrel)});
    for (double CardProfile::*f : {&CardProfile::t_click_rel, &CardProfile::t_skip_rel,
                                   &CardProfile::t_click_nonrel,
                                   &CardProfile::t_skip_nonrel, &CardProfile::t_read_rel}) {
      worst_t = std::max(worst_t, std::abs(e.*f - t.*f) / (t.*f));
    }
  }
  return {worst_p <= kProbTol && worst_t <= kTimeRelTol,
          "max prob error " + num(worst_p, 4) + ", max timing error " +
              num(100.0 * worst_t, 2) + "% (10000 records, seed 42)"};
}

Outcome calibration_recovery() {
  Rng rng(2024);
  std::vector<ScoredLabel> pairs;
  for (int i = 0; i < 5000; ++i) {
    const double z = standard_normal(rng);
    pairs.push_back({z, bernoulli(rng, logistic_map(2.0 * z)) ? 1 : 0});
  }
  const auto m = fit_relevance_model(pairs);
  const bool exact_half = logistic_map(0.0) == 0.5;
  return {std::abs(m.slope - 2.0) <= kSlopeTol && exact_half,
          "slope " + num(m.slope, 4) + " intercept " + num(m.intercept, 4) +
              "; logistic_map(0) " + (exact_half ? "== 0.5" : "!= 0.5")};
}

Outcome anova_hand() {
  const std::vector<std::vector<double>> g = {{1, 2, 3}, {2, 3, 4}};
  const auto r = one_way_anova(g);
  return {r.f == 1.5 && r.df_between == 1 && r.df_within == 4,
          "F(" + std::to_string(r.df_between) + "," + std::to_string(r.df_within) +
              ")=" + num(r.f, 6)};
}

struct FullRun {
  ExperimentReport report;
  double seconds = 0.0;
};

FullRun full_run(const std::vector<Topic>& topics, const ProfileSet& profiles) {
  ExperimentOptions opts;
  opts.seed = 20260101;
  const auto t0 = Clock::now();
  FullRun r{run_experiment(topics, kAllCombos, profiles, opts), 0.0};
  r.seconds = seconds_since(t0);
  return r;
}

Outcome directional(const ExperimentReport& rep) {
  bool below_one = true;
  double cards_tis_ti = 0.0, cards_ts_t = 0.0, max_rbo = 0.0;
  for (const auto& row : rep.rows) {
    if (row.combo == ComboType::TISOrTI) cards_tis_ti = row.cards_mean;
    if (row.combo == ComboType::TSOrT) cards_ts_t = row.cards_mean;
    if (row.combo == ComboType::Baseline) continue;
    below_one = below_one && row.rbo.mean < 1.0;
    max_rbo = std::max(max_rbo, row.rbo.mean);
  }
  return {below_one && cards_tis_ti < cards_ts_t,
          "max non-baseline RBO " + num(max_rbo, 4) + "; cards TIS-or-TI " +
              num(cards_tis_ti, 3) + " vs TS-or-T " + num(cards_ts_t, 3)};
}

Outcome determinism(const FullRun& first, const std::vector<Topic>& topics,
                    const ProfileSet& profiles) {
  const auto second = full_run(topics, profiles);
  const bool same = serialize(first.report) == serialize(second.report);
  const double slowest = std::max(first.seconds, second.seconds);
  return {same && slowest < kFullRunSeconds && first.report.trials.size() == 40000,
          std::to_string(first.report.trials.size()) + " trials, " +
              (same ? "byte-identical" : "DIFFERENT") + " across runs, slowest " +
              num(slowest, 2) + " s"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("AC%-2d %s  %-28s %s\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "baseline identity", baseline_identity);
  report(2, "page capacity", page_capacity);
  report(3, "tbg half-life", tbg_half_life);
  report(4, "epu oracle equivalence", epu_oracle);
  report(5, "epu list hand case", epu_list_hand);
  report(6, "rbo oracle", rbo_oracle);
  report(7, "estimation consistency", estimation_consistency);
  report(8, "calibration recovery", calibration_recovery);
  report(9, "anova hand case", anova_hand);

  const auto profiles = shipped();
  const auto topics = desk_topics();
  FullRun first;
  bool have_run = false;
  report(10, "directional card-mix effect", [&] {
    first = full_run(topics, profiles);
    have_run = true;
    return directional(first.report);
  });
  report(11, "determinism and scale", [&] {
    if (!have_run) return Outcome{false, "full run unavailable"};
    return determinism(first, topics, profiles);
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
