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

#include "iprp/simulation.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <omp.h>

#include "iprp/epu.hpp"

namespace iprp {

namespace {

constexpr std::array<CardType, 1> kBaselineCards = {CardType::TS};
constexpr std::array<CardType, 2> kTOrTI = {CardType::T, CardType::TI};
constexpr std::array<CardType, 2> kTISOrTS = {CardType::TIS, CardType::TS};
constexpr std::array<CardType, 2> kTISOrT = {CardType::TIS, CardType::T};
constexpr std::array<CardType, 2> kTSOrT = {CardType::TS, CardType::T};
constexpr std::array<CardType, 2> kTSOrTI = {CardType::TS, CardType::TI};
constexpr std::array<CardType, 2> kTISOrTI = {CardType::TIS, CardType::TI};

}  // namespace

std::string_view combo_name(ComboType combo) {
  switch (combo) {
    case ComboType::Baseline: return "baseline";
    case ComboType::TOrTI: return "t-or-ti";
    case ComboType::TISOrTS: return "tis-or-ts";
    case ComboType::TISOrT: return "tis-or-t";
    case ComboType::TSOrT: return "ts-or-t";
    case ComboType::Random: return "random";
    case ComboType::TSOrTI: return "ts-or-ti";
    case ComboType::TISOrTI: return "tis-or-ti";
  }
  return "?";
}

std::string combo_label(ComboType combo) {
  const auto index = static_cast<std::size_t>(combo);
  const char letter = static_cast<char>('a' + index);
  std::string name;
  switch (combo) {
    case ComboType::Baseline: name = "Baseline"; break;
    case ComboType::Random: name = "Random"; break;
    default: {
      const auto cards = combo_cards(combo);
      name = std::string(to_string(cards[0])) + " or " +
             std::string(to_string(cards[1]));
    }
  }
  return std::string(1, letter) + ". " + name;
}

ComboType parse_combo(std::string_view name) {
  for (ComboType combo : kAllCombos) {
    if (combo_name(combo) == name) return combo;
  }
  throw DataError("unknown combination type '" + std::string(name) + "'");
}

std::vector<ComboType> parse_combo_list(std::string_view text) {
  if (text == "all") return {kAllCombos.begin(), kAllCombos.end()};
  std::vector<ComboType> combos;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    const auto combo = parse_combo(text.substr(start, end - start));
    if (std::find(combos.begin(), combos.end(), combo) != combos.end()) {
      throw DataError("combination listed twice: " +
                      std::string(combo_name(combo)));
    }
    combos.push_back(combo);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return combos;
}

std::span<const CardType> combo_cards(ComboType combo) {
  switch (combo) {
    case ComboType::Baseline: return kBaselineCards;
    case ComboType::TOrTI: return kTOrTI;
    case ComboType::TISOrTS: return kTISOrTS;
    case ComboType::TISOrT: return kTISOrT;
    case ComboType::TSOrT: return kTSOrT;
    case ComboType::Random: return kAllCardTypes;
    case ComboType::TSOrTI: return kTSOrTI;
    case ComboType::TISOrTI: return kTISOrTI;
  }
  return kBaselineCards;
}

RankedList baseline_ranking(std::string_view topic_id,
                            std::span<const RunEntry> run,
                            const CalibrationModel& model,
                            const QrelTable* qrels, int k) {
  if (k < 1) throw DataError("baseline_ranking: k must be >= 1");
  std::vector<const RunEntry*> entries;
  for (const auto& e : run) {
    if (e.topic_id == topic_id) entries.push_back(&e);
  }
  if (entries.empty()) {
    throw DataError("baseline_ranking: no run entries for topic " +
                    std::string(topic_id));
  }
  std::sort(entries.begin(), entries.end(),
            [](const RunEntry* a, const RunEntry* b) {
              if (a->score != b->score) return a->score > b->score;
              return a->doc_id < b->doc_id;
            });
  const auto n = std::min(entries.size(), static_cast<std::size_t>(k));
  std::vector<Placement> placed;
  placed.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RunEntry& e = *entries[i];
    ResultItem item;
    item.doc_id = e.doc_id;
    item.topic_id = e.topic_id;
    item.score = e.score;
    item.p_rel = predict_p_rel(model, e.score);
    if (qrels) item.rel_label = qrels->label(e.topic_id, e.doc_id);
    placed.push_back({std::move(item), kBaselineCard});
  }
  return RankedList(std::move(placed));
}

RankedList assign_cards(const RankedList& list, ComboType combo, Rng& rng) {
  if (combo == ComboType::Baseline) return list;
  const auto cards = combo_cards(combo);
  std::vector<Placement> placed = list.entries();
  for (auto& p : placed) p.card = cards[uniform_index(rng, cards.size())];
  return RankedList(std::move(placed));
}

SerpLayout layout_page(const RankedList& list, const ProfileSet& profiles,
                       int row_budget) {
  if (row_budget < 1) throw DataError("layout_page: row budget must be >= 1");
  SerpLayout page;
  page.row_budget = row_budget;
  int min_height = row_budget + 1;
  for (const auto& p : profiles) min_height = std::min(min_height, p.second.height_rows);
  for (const auto& placed : list) {
    const int height = require_profile(profiles, placed.card).height_rows;
    if (height <= row_budget - page.rows_used) {
      page.shown.push_back(placed);
      page.rows_used += height;
    }
    if (row_budget - page.rows_used < min_height) break;
  }
  return page;
}

RankedList rerank_by_epu(const RankedList& list, const ProfileSet& profiles) {
  struct Keyed {
    double epu;
    std::size_t rank;
  };
  std::vector<Keyed> keys;
  keys.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& placed = list[i];
    keys.push_back(
        {epu_card(require_profile(profiles, placed.card), placed.item.p_rel), i});
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
    return a.epu > b.epu;
  });
  std::vector<Placement> reordered;
  reordered.reserve(list.size());
  for (const auto& k : keys) reordered.push_back(list[k.rank]);
  return RankedList(std::move(reordered));
}

std::vector<Topic> build_topics(std::span<const RunEntry> run,
                                const CalibrationModel& model,
                                const QrelTable* qrels, int k) {
  std::map<std::string, bool> ids;
  for (const auto& e : run) ids[e.topic_id] = true;
  std::vector<Topic> topics;
  topics.reserve(ids.size());
  for (const auto& [id, unused] : ids) {
    topics.push_back({id, baseline_ranking(id, run, model, qrels, k)});
  }
  return topics;
}

std::vector<ScoredLabel> calibration_pairs(std::span<const RunEntry> run,
                                           const QrelTable& qrels, int depth) {
  if (depth < 1) throw DataError("calibration depth must be >= 1");
  std::map<std::string, std::vector<const RunEntry*>> by_topic;
  for (const auto& e : run) by_topic[e.topic_id].push_back(&e);
  std::vector<ScoredLabel> pairs;
  for (auto& [topic, entries] : by_topic) {
    std::sort(entries.begin(), entries.end(),
              [](const RunEntry* a, const RunEntry* b) {
                if (a->score != b->score) return a->score > b->score;
                return a->doc_id < b->doc_id;
              });
    const auto n = std::min(entries.size(), static_cast<std::size_t>(depth));
    for (std::size_t i = 0; i < n; ++i) {
      const auto label = qrels.label(topic, entries[i]->doc_id).value_or(0);
      pairs.push_back({entries[i]->score, label > 0 ? 1 : 0});
    }
  }
  return pairs;
}

std::uint64_t trial_seed(std::uint64_t experiment_seed,
                         std::string_view topic_id, ComboType combo,
                         int trial_index) {
  return derive_seed(experiment_seed, stable_hash(topic_id),
                     static_cast<std::uint64_t>(combo),
                     static_cast<std::uint64_t>(trial_index));
}

namespace {

std::vector<int> binary_labels(const std::vector<Placement>& shown) {
  std::vector<int> labels;
  labels.reserve(shown.size());
  for (const auto& p : shown) labels.push_back(p.item.is_relevant() ? 1 : 0);
  return labels;
}

std::vector<int> raw_labels(const std::vector<Placement>& shown) {
  std::vector<int> labels;
  labels.reserve(shown.size());
  for (const auto& p : shown) labels.push_back(p.item.rel_label.value_or(0));
  return labels;
}

std::vector<std::string> page_ids(const SerpLayout& page) {
  std::vector<std::string> ids;
  ids.reserve(page.shown.size());
  for (const auto& p : page.shown) ids.push_back(p.item.doc_id);
  return ids;
}

}  // namespace

TrialResult run_trial(const Topic& topic, ComboType combo,
                      std::uint64_t experiment_seed, int trial_index,
                      const ProfileSet& profiles,
                      const SimulationConfig& config) {
  Rng rng(trial_seed(experiment_seed, topic.topic_id, combo, trial_index));
  const RankedList altered = assign_cards(topic.baseline, combo, rng);
  const RankedList reranked = rerank_by_epu(altered, profiles);
  const SerpLayout page = layout_page(reranked, profiles, config.row_budget);
  const auto& m = config.metrics;

  TrialResult result;
  result.topic_id = topic.topic_id;
  result.combo = combo;
  result.trial_index = trial_index;
  if (config.rbo_scope == RboScope::FullList) {
    result.rbo = rbo(reranked.doc_ids(), topic.baseline.doc_ids(),
                     m.rbo_persistence);
  } else {
    const SerpLayout base_page =
        layout_page(topic.baseline, profiles, config.row_budget);
    result.rbo = rbo(page_ids(page), page_ids(base_page), m.rbo_persistence);
  }
  result.dcg_page = m.graded_dcg ? dcg_of_page(raw_labels(page.shown), true)
                                 : dcg_of_page(binary_labels(page.shown));
  result.tbg_page = tbg_of_page(page, profiles, m.tbg_halflife, m.tbg_gain_scale);
  result.cards_on_page = static_cast<int>(page.shown.size());
  result.rows_used = page.rows_used;
  return result;
}

ExperimentReport summarize_trials(std::vector<TrialResult> trials,
                                  std::span<const ComboType> combos) {
  ExperimentReport report;
  std::vector<std::vector<double>> rbo_groups;
  for (ComboType combo : combos) {
    std::vector<double> rbos, dcgs, tbgs;
    double cards = 0.0;
    for (const auto& t : trials) {
      if (t.combo != combo) continue;
      rbos.push_back(t.rbo);
      dcgs.push_back(t.dcg_page);
      tbgs.push_back(t.tbg_page);
      cards += t.cards_on_page;
    }
    if (rbos.empty()) {
      throw DataError("no trials for combination " +
                      std::string(combo_name(combo)));
    }
    ComboSummary row;
    row.combo = combo;
    row.rbo = summarize(rbos);
    row.dcg = summarize(dcgs);
    row.tbg = summarize(tbgs);
    row.cards_mean = cards / static_cast<double>(rbos.size());
    report.rows.push_back(row);
    rbo_groups.push_back(std::move(rbos));
  }
  if (rbo_groups.size() >= 2) {
    try {
      report.rbo_anova = one_way_anova(rbo_groups);
    } catch (const DataError&) {
      // Undefined for these groups (too few trials or no spread).
    }
  }
  report.trials = std::move(trials);
  return report;
}

ExperimentReport run_experiment(std::span<const Topic> topics,
                                std::span<const ComboType> combos,
                                const ProfileSet& profiles,
                                const ExperimentOptions& options) {
  if (topics.empty()) throw DataError("run_experiment: no topics");
  if (combos.empty()) throw DataError("run_experiment: no combinations");
  if (options.trials_per_combo < 1) {
    throw DataError("run_experiment: trials per combination must be >= 1");
  }
  if (options.config.row_budget < 1) {
    throw DataError("run_experiment: row budget must be >= 1");
  }
  validate_config(options.config.metrics);
  require_profile(profiles, kBaselineCard);
  for (ComboType combo : combos) {
    for (CardType card : combo_cards(combo)) require_profile(profiles, card);
  }

  const std::size_t per_combo =
      topics.size() * static_cast<std::size_t>(options.trials_per_combo);
  const std::size_t total = per_combo * combos.size();
  std::vector<TrialResult> trials(total);

  auto run_one = [&](std::size_t i) {
    const std::size_t c = i / per_combo;
    const std::size_t rest = i % per_combo;
    const std::size_t t = rest / static_cast<std::size_t>(options.trials_per_combo);
    const int trial = static_cast<int>(rest % static_cast<std::size_t>(options.trials_per_combo));
    trials[i] = run_trial(topics[t], combos[c], options.seed, trial, profiles,
                          options.config);
  };

  if (options.execution == Execution::Serial) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        run_one(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return summarize_trials(std::move(trials), combos);
}

}  // namespace iprp
