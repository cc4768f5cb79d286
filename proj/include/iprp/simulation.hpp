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

#ifndef IPRP_SIMULATION_HPP_
#define IPRP_SIMULATION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iprp/calibration.hpp"
#include "iprp/core.hpp"
#include "iprp/formats.hpp"
#include "iprp/metrics.hpp"
#include "iprp/random.hpp"

namespace iprp {

// Card-type mixes for the heterogeneous-SERP experiment. Baseline keeps every
// result on a TS card; Random draws from all four types; the rest draw
// uniformly from the two named types.
enum class ComboType {
  Baseline,
  TOrTI,
  TISOrTS,
  TISOrT,
  TSOrT,
  Random,
  TSOrTI,
  TISOrTI,
};

inline constexpr std::array<ComboType, 8> kAllCombos = {
    ComboType::Baseline, ComboType::TOrTI,  ComboType::TISOrTS,
    ComboType::TISOrT,   ComboType::TSOrT,  ComboType::Random,
    ComboType::TSOrTI,   ComboType::TISOrTI};

// Machine name, e.g. "tis-or-ts".
std::string_view combo_name(ComboType combo);
// Table label, e.g. "c. TIS or TS".
std::string combo_label(ComboType combo);
ComboType parse_combo(std::string_view name);
// "all" or a comma-separated list of machine names.
std::vector<ComboType> parse_combo_list(std::string_view text);
std::span<const CardType> combo_cards(ComboType combo);

inline constexpr CardType kBaselineCard = CardType::TS;
inline constexpr int kDefaultRowBudget = 12;
inline constexpr int kDefaultCandidates = 20;
inline constexpr int kCalibrationDepth = 50;

// Top-k run entries of `topic_id` by descending score (ties: ascending
// doc_id), all on TS cards, p_rel from `model`, labels from `qrels` when
// given. Throws DataError if the topic has no entries.
RankedList baseline_ranking(std::string_view topic_id,
                            std::span<const RunEntry> run,
                            const CalibrationModel& model,
                            const QrelTable* qrels = nullptr,
                            int k = kDefaultCandidates);

// Draws every position's card independently from the combo's card set.
// Baseline returns the list unchanged and consumes no randomness.
RankedList assign_cards(const RankedList& list, ComboType combo, Rng& rng);

// Greedy fill in list order: a card is placed iff it fits the remaining rows;
// cards that do not fit are skipped and scanning continues.
SerpLayout layout_page(const RankedList& list, const ProfileSet& profiles,
                       int row_budget);

// Stable sort by descending epu_card; equal utilities keep their rank order.
RankedList rerank_by_epu(const RankedList& list, const ProfileSet& profiles);

enum class RboScope {
  FullList,  // re-ranked candidates vs baseline candidates
  Page,      // re-ranked page vs baseline page
};

struct SimulationConfig {
  int row_budget = kDefaultRowBudget;
  MetricConfig metrics;
  RboScope rbo_scope = RboScope::FullList;
};

struct Topic {
  std::string topic_id;
  RankedList baseline;
};

// One Topic per distinct topic id in `run`, sorted by topic id.
std::vector<Topic> build_topics(std::span<const RunEntry> run,
                                const CalibrationModel& model,
                                const QrelTable* qrels,
                                int k = kDefaultCandidates);

// Top `depth` entries per topic paired with binarized qrel labels
// (unjudged = 0).
std::vector<ScoredLabel> calibration_pairs(std::span<const RunEntry> run,
                                           const QrelTable& qrels,
                                           int depth = kCalibrationDepth);

struct TrialResult {
  std::string topic_id;
  ComboType combo = ComboType::Baseline;
  int trial_index = 0;
  double rbo = 0.0;
  double dcg_page = 0.0;
  double tbg_page = 0.0;
  int cards_on_page = 0;
  int rows_used = 0;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

std::uint64_t trial_seed(std::uint64_t experiment_seed,
                         std::string_view topic_id, ComboType combo,
                         int trial_index);

// assign_cards -> rerank_by_epu -> layout_page -> RBO, DCG and TBG.
TrialResult run_trial(const Topic& topic, ComboType combo,
                      std::uint64_t experiment_seed, int trial_index,
                      const ProfileSet& profiles,
                      const SimulationConfig& config = {});

struct ComboSummary {
  ComboType combo = ComboType::Baseline;
  Summary rbo;
  Summary dcg;
  Summary tbg;
  double cards_mean = 0.0;

  friend bool operator==(const ComboSummary&, const ComboSummary&) = default;
};

struct ExperimentReport {
  std::vector<ComboSummary> rows;   // one per combo, in request order
  std::vector<TrialResult> trials;  // combo-major, then topic, then trial
  std::optional<AnovaResult> rbo_anova;
};

enum class Execution { Serial, Parallel };

struct ExperimentOptions {
  int trials_per_combo = 100;
  std::uint64_t seed = 0;
  SimulationConfig config;
  Execution execution = Execution::Parallel;
  int threads = 0;  // 0 = OpenMP default
};

// Trials are independent and seeded from (seed, topic, combo, trial), so the
// report does not depend on the execution schedule.
ExperimentReport run_experiment(std::span<const Topic> topics,
                                std::span<const ComboType> combos,
                                const ProfileSet& profiles,
                                const ExperimentOptions& options = {});

// Groups trials by combo (in `combos` order) into summary rows; RBO ANOVA is
// attached when it is defined for the groups.
ExperimentReport summarize_trials(std::vector<TrialResult> trials,
                                  std::span<const ComboType> combos);

}  // namespace iprp

#endif  // IPRP_SIMULATION_HPP_
