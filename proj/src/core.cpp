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

#include "iprp/core.hpp"

#include <cmath>
#include <unordered_set>

namespace iprp {

std::string_view to_string(CardType type) {
  switch (type) {
    case CardType::TIS: return "TIS";
    case CardType::TI: return "TI";
    case CardType::TS: return "TS";
    case CardType::T: return "T";
  }
  return "?";
}

CardType parse_card_type(std::string_view name) {
  for (CardType type : kAllCardTypes) {
    if (to_string(type) == name) return type;
  }
  throw DataError("unknown card type '" + std::string(name) + "'");
}

int card_height(CardType type) {
  switch (type) {
    case CardType::TIS: return 6;
    case CardType::TI: return 4;
    case CardType::TS: return 3;
    case CardType::T: return 1;
  }
  return 1;
}

std::string_view to_string(Action action) {
  return action == Action::Click ? "click" : "skip";
}

std::string_view to_string(Relevance relevance) {
  return relevance == Relevance::Relevant ? "relevant" : "non-relevant";
}

double CardProfile::probability(Action action, Relevance relevance) const {
  if (relevance == Relevance::Relevant) {
    return action == Action::Click ? p_click_rel : p_skip_rel();
  }
  return action == Action::Click ? p_click_nonrel() : p_skip_nonrel;
}

double CardProfile::decision_time(Action action, Relevance relevance) const {
  if (relevance == Relevance::Relevant) {
    return action == Action::Click ? t_click_rel : t_skip_rel;
  }
  return action == Action::Click ? t_click_nonrel : t_skip_nonrel;
}

namespace {

void check_time(std::string_view field, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DataError(std::string(field) + ": timing must be finite and >= 0");
  }
}

void check_probability(std::string_view field, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DataError(std::string(field) + ": probability out of range");
  }
}

}  // namespace

CardProfile validate_profile(const CardProfile& profile) {
  check_time("t_click_rel", profile.t_click_rel);
  check_time("t_click_nonrel", profile.t_click_nonrel);
  check_time("t_skip_rel", profile.t_skip_rel);
  check_time("t_skip_nonrel", profile.t_skip_nonrel);
  check_time("t_read_rel", profile.t_read_rel);
  check_probability("p_click_rel", profile.p_click_rel);
  check_probability("p_skip_nonrel", profile.p_skip_nonrel);
  if (profile.height_rows < 1) {
    throw DataError("height_rows: height must be ≥ 1");
  }
  return profile;
}

const CardProfile& require_profile(const ProfileSet& profiles, CardType type) {
  auto it = profiles.find(type);
  if (it == profiles.end()) {
    throw DataError("missing profile for card type " +
                    std::string(to_string(type)));
  }
  return it->second;
}

RankedList::RankedList(std::vector<Placement> entries)
    : entries_(std::move(entries)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& entry : entries_) {
    if (!seen.insert(entry.item.doc_id).second) {
      throw DataError("duplicate doc_id '" + entry.item.doc_id +
                      "' in ranked list");
    }
    if (!(entry.item.p_rel >= 0.0 && entry.item.p_rel <= 1.0)) {
      throw DataError("p_rel out of range for doc '" + entry.item.doc_id + "'");
    }
  }
}

std::vector<std::string> RankedList::doc_ids() const {
  std::vector<std::string> ids;
  ids.reserve(entries_.size());
  for (const auto& entry : entries_) ids.push_back(entry.item.doc_id);
  return ids;
}

AnnotationRecord validate_record(const AnnotationRecord& record) {
  if (!(record.decision_time > 0.0) || !std::isfinite(record.decision_time)) {
    throw DataError("decision_time must be > 0");
  }
  if (record.read_time) {
    if (record.action == Action::Skip) throw DataError("read_time on skip");
    if (!(*record.read_time > 0.0) || !std::isfinite(*record.read_time)) {
      throw DataError("read_time must be > 0");
    }
  }
  if (record.rel_label < 0) throw DataError("rel_label must be >= 0");
  return record;
}

}  // namespace iprp
