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

#ifndef IPRP_ESTIMATION_HPP_
#define IPRP_ESTIMATION_HPP_

#include <map>
#include <span>
#include <tuple>

#include "iprp/core.hpp"

namespace iprp {

// Per-cell action frequencies. Cells are (card type, binarized relevance).
struct ActionFrequency {
  std::size_t shown = 0;
  std::size_t clicks = 0;

  double p_click() const {
    return static_cast<double>(clicks) / static_cast<double>(shown);
  }
  double p_skip() const { return 1.0 - p_click(); }
};

class ActionProbabilityTable {
 public:
  using Key = std::pair<CardType, Relevance>;

  void add(CardType card, Relevance relevance, bool clicked);

  // Throws DataError("no observations for cell (TI, non-relevant)").
  const ActionFrequency& at(CardType card, Relevance relevance) const;
  bool contains(CardType card, Relevance relevance) const;
  const std::map<Key, ActionFrequency>& cells() const { return cells_; }

 private:
  std::map<Key, ActionFrequency> cells_;
};

struct TimingSummary {
  double mean = 0.0;
  double std = 0.0;  // population
  std::size_t count = 0;
};

class ActionTimeTable {
 public:
  using Key = std::tuple<Action, CardType, Relevance>;

  const TimingSummary& at(Action action, CardType card,
                          Relevance relevance) const;
  bool contains(Action action, CardType card, Relevance relevance) const;
  const std::map<Key, TimingSummary>& cells() const { return cells_; }

  std::map<Key, TimingSummary>& mutable_cells() { return cells_; }

 private:
  std::map<Key, TimingSummary> cells_;
};

class ReadingTimeTable {
 public:
  // Throws DataError when no relevant click carried a read time.
  double at(CardType card) const;
  bool contains(CardType card) const { return seconds_.contains(card); }
  const std::map<CardType, double>& values() const { return seconds_; }

  std::map<CardType, double>& mutable_values() { return seconds_; }

 private:
  std::map<CardType, double> seconds_;
};

// Unsmoothed maximum likelihood click/skip probabilities.
ActionProbabilityTable estimate_action_probabilities(
    std::span<const AnnotationRecord> records);

// Mean and population std of decision_time per (action, card, relevance).
ActionTimeTable estimate_action_times(std::span<const AnnotationRecord> records);

// For each card type: the longest read of each user over their relevant
// clicks on that card type, averaged over users.
ReadingTimeTable estimate_reading_time(std::span<const AnnotationRecord> records);

using HeightMap = std::map<CardType, int>;

// Default card heights for every card type.
HeightMap default_heights();

// One validated profile per card type. Every card type needs relevant and
// non-relevant impressions, decision times for all four (action, relevance)
// pairs, and at least one relevant read. Card types absent from `heights`
// fall back to card_height().
ProfileSet build_profiles(std::span<const AnnotationRecord> records,
                          const HeightMap& heights = default_heights());

}  // namespace iprp

#endif  // IPRP_ESTIMATION_HPP_
