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

#ifndef IPRP_CORE_HPP_
#define IPRP_CORE_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iprp {

// Raised for any input that violates a documented invariant: malformed
// files, out-of-range parameters, missing estimation cells. The CLI maps
// it to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Result card presentation types. TIS = title + image + summary,
// TI = title + image, TS = title + summary, T = title only.
enum class CardType { TIS, TI, TS, T };

inline constexpr std::array<CardType, 4> kAllCardTypes = {
    CardType::TIS, CardType::TI, CardType::TS, CardType::T};

std::string_view to_string(CardType type);

// Exact, case-sensitive match on "TIS", "TI", "TS", "T".
CardType parse_card_type(std::string_view name);

// Default heights in 12-column grid rows: TIS 6, TI 4, TS 3, T 1.
int card_height(CardType type);

enum class Action { Click, Skip };
enum class Relevance { Relevant, NonRelevant };

std::string_view to_string(Action action);
std::string_view to_string(Relevance relevance);

// Interaction profile of one card type. Only P(c|R) and P(s|R̄) are stored;
// the other two probabilities follow from the binary action space.
struct CardProfile {
  CardType card_type = CardType::TS;
  double t_click_rel = 0.0;     // T(c|R)
  double t_click_nonrel = 0.0;  // T(c|R̄)
  double t_skip_rel = 0.0;      // T(s|R)
  double t_skip_nonrel = 0.0;   // T(s|R̄)
  double t_read_rel = 0.0;      // T(read|R), the benefit of a relevant click
  double p_click_rel = 0.0;     // P(c|R)
  double p_skip_nonrel = 0.0;   // P(s|R̄)
  int height_rows = 1;

  double p_skip_rel() const { return 1.0 - p_click_rel; }
  double p_click_nonrel() const { return 1.0 - p_skip_nonrel; }

  double probability(Action action, Relevance relevance) const;
  double decision_time(Action action, Relevance relevance) const;

  friend bool operator==(const CardProfile&, const CardProfile&) = default;
};

// Returns `profile` unchanged, or throws DataError naming the first
// offending field.
CardProfile validate_profile(const CardProfile& profile);

using ProfileSet = std::map<CardType, CardProfile>;

// Throws DataError("missing profile for card type X").
const CardProfile& require_profile(const ProfileSet& profiles, CardType type);

struct ResultItem {
  std::string doc_id;
  std::string topic_id;
  double score = 0.0;
  double p_rel = 0.0;
  std::optional<int> rel_label;  // absent = unjudged

  // Unjudged documents count as non-relevant.
  bool is_relevant() const { return rel_label.value_or(0) > 0; }

  friend bool operator==(const ResultItem&, const ResultItem&) = default;
};

struct Placement {
  ResultItem item;
  CardType card = CardType::TS;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Ordered list of placed items; element 0 is the top rank. Doc ids are
// unique within a list.
class RankedList {
 public:
  RankedList() = default;
  explicit RankedList(std::vector<Placement> entries);

  const std::vector<Placement>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Placement& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::vector<std::string> doc_ids() const;

  friend bool operator==(const RankedList&, const RankedList&) = default;

 private:
  std::vector<Placement> entries_;
};

// The part of a ranked list that is shown within the row budget.
struct SerpLayout {
  std::vector<Placement> shown;
  int rows_used = 0;
  int row_budget = 0;
};

struct AnnotationRecord {
  std::string user_id;
  std::string topic_id;
  std::string doc_id;
  CardType card_type = CardType::TS;
  int rel_label = 0;
  Action action = Action::Skip;
  double decision_time = 0.0;
  std::optional<double> read_time;  // clicks only

  Relevance relevance() const {
    return rel_label > 0 ? Relevance::Relevant : Relevance::NonRelevant;
  }

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

AnnotationRecord validate_record(const AnnotationRecord& record);

}  // namespace iprp

#endif  // IPRP_CORE_HPP_
