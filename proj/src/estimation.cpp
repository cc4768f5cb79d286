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

#include "iprp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace iprp {

namespace {

std::string cell_name(CardType card, Relevance relevance) {
  return "(" + std::string(to_string(card)) + ", " +
         std::string(to_string(relevance)) + ")";
}

}  // namespace

void ActionProbabilityTable::add(CardType card, Relevance relevance,
                                 bool clicked) {
  auto& cell = cells_[{card, relevance}];
  ++cell.shown;
  if (clicked) ++cell.clicks;
}

const ActionFrequency& ActionProbabilityTable::at(CardType card,
                                                  Relevance relevance) const {
  auto it = cells_.find({card, relevance});
  if (it == cells_.end() || it->second.shown == 0) {
    throw DataError("no observations for cell " + cell_name(card, relevance));
  }
  return it->second;
}

bool ActionProbabilityTable::contains(CardType card,
                                      Relevance relevance) const {
  return cells_.contains({card, relevance});
}

const TimingSummary& ActionTimeTable::at(Action action, CardType card,
                                         Relevance relevance) const {
  auto it = cells_.find({action, card, relevance});
  if (it == cells_.end()) {
    throw DataError("no observations for cell " + std::string(to_string(action)) +
                    " " + cell_name(card, relevance));
  }
  return it->second;
}

bool ActionTimeTable::contains(Action action, CardType card,
                               Relevance relevance) const {
  return cells_.contains({action, card, relevance});
}

double ReadingTimeTable::at(CardType card) const {
  auto it = seconds_.find(card);
  if (it == seconds_.end()) {
    throw DataError("no relevant-click reading times for card type " +
                    std::string(to_string(card)));
  }
  return it->second;
}

ActionProbabilityTable estimate_action_probabilities(
    std::span<const AnnotationRecord> records) {
  ActionProbabilityTable table;
  for (const auto& r : records) {
    table.add(r.card_type, r.relevance(), r.action == Action::Click);
  }
  return table;
}

ActionTimeTable estimate_action_times(
    std::span<const AnnotationRecord> records) {
  // Two passes (mean, then squared deviations) keep the result independent of
  // record order up to floating-point summation order within a cell.
  struct Acc {
    double sum = 0.0;
    double ss = 0.0;
    std::size_t n = 0;
  };
  std::map<ActionTimeTable::Key, Acc> acc;
  for (const auto& r : records) {
    auto& a = acc[{r.action, r.card_type, r.relevance()}];
    a.sum += r.decision_time;
    ++a.n;
  }
  for (const auto& r : records) {
    auto& a = acc[{r.action, r.card_type, r.relevance()}];
    const double mean = a.sum / static_cast<double>(a.n);
    a.ss += (r.decision_time - mean) * (r.decision_time - mean);
  }
  ActionTimeTable table;
  for (const auto& [key, a] : acc) {
    const double n = static_cast<double>(a.n);
    table.mutable_cells()[key] = {a.sum / n, std::sqrt(a.ss / n), a.n};
  }
  return table;
}

ReadingTimeTable estimate_reading_time(
    std::span<const AnnotationRecord> records) {
  std::map<std::pair<CardType, std::string>, double> longest;
  for (const auto& r : records) {
    if (r.action != Action::Click || r.relevance() != Relevance::Relevant ||
        !r.read_time) {
      continue;
    }
    auto [it, inserted] =
        longest.try_emplace({r.card_type, r.user_id}, *r.read_time);
    if (!inserted) it->second = std::max(it->second, *r.read_time);
  }
  std::map<CardType, std::pair<double, std::size_t>> per_card;
  for (const auto& [key, seconds] : longest) {
    auto& [sum, users] = per_card[key.first];
    sum += seconds;
    ++users;
  }
  ReadingTimeTable table;
  for (const auto& [card, acc] : per_card) {
    table.mutable_values()[card] = acc.first / static_cast<double>(acc.second);
  }
  return table;
}

HeightMap default_heights() {
  HeightMap heights;
  for (CardType type : kAllCardTypes) heights[type] = card_height(type);
  return heights;
}

ProfileSet build_profiles(std::span<const AnnotationRecord> records,
                          const HeightMap& heights) {
  const auto probabilities = estimate_action_probabilities(records);
  const auto times = estimate_action_times(records);
  const auto reading = estimate_reading_time(records);

  ProfileSet profiles;
  for (CardType card : kAllCardTypes) {
    try {
      CardProfile p;
      p.card_type = card;
      p.p_click_rel = probabilities.at(card, Relevance::Relevant).p_click();
      p.p_skip_nonrel = probabilities.at(card, Relevance::NonRelevant).p_skip();
      p.t_click_rel = times.at(Action::Click, card, Relevance::Relevant).mean;
      p.t_skip_rel = times.at(Action::Skip, card, Relevance::Relevant).mean;
      p.t_click_nonrel =
          times.at(Action::Click, card, Relevance::NonRelevant).mean;
      p.t_skip_nonrel = times.at(Action::Skip, card, Relevance::NonRelevant).mean;
      p.t_read_rel = reading.at(card);
      auto h = heights.find(card);
      p.height_rows = h != heights.end() ? h->second : card_height(card);
      profiles[card] = validate_profile(p);
    } catch (const DataError& e) {
      throw DataError("cannot build " + std::string(to_string(card)) +
                      " profile: " + e.what());
    }
  }
  return profiles;
}

}  // namespace iprp
