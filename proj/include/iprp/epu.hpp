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

#ifndef IPRP_EPU_HPP_
#define IPRP_EPU_HPP_

#include <array>
#include <span>

#include "iprp/core.hpp"

namespace iprp {

// One cell of the {click, skip} x {R, R̄} outcome space of a card.
struct ActionOutcome {
  Action action;
  Relevance relevance;
  double probability;  // P(A|R_i)
  double benefit;      // B(A|R_i), seconds
  double cost;         // C(A|R_i), seconds
};

// Benefit is T(read|R) for a relevant click and zero everywhere else; cost is
// the decision time of the (action, relevance) pair.
std::array<ActionOutcome, 4> action_outcomes(const CardProfile& profile);

// P(A|R)B(A|R) + P(A|R̄)B(A|R̄). Zero for skips.
double expected_benefit(const CardProfile& profile, Action action);

// P(A|R)C(A|R) + P(A|R̄)C(A|R̄).
double expected_cost(const CardProfile& profile, Action action);

// Expected perceived utility of showing an item with relevance probability
// `p_rel` on a card with `profile`, in seconds. May be negative.
double epu_card(const CardProfile& profile, double p_rel);

struct EpuTerm {
  double p_rel;
  double card_epu;
};

// Sum of card utilities, each discounted by the probability that no earlier
// item was relevant. Throws DataError on empty input. The row budget is not
// checked here; see layout_page.
double epu_list(std::span<const EpuTerm> terms);

struct ListItem {
  double p_rel;
  const CardProfile* profile;
};

double epu_list(std::span<const ListItem> items);

}  // namespace iprp

#endif  // IPRP_EPU_HPP_
