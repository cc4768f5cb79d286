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

#include "iprp/epu.hpp"

#include <vector>

namespace iprp {

std::array<ActionOutcome, 4> action_outcomes(const CardProfile& p) {
  return {{
      {Action::Click, Relevance::Relevant, p.p_click_rel, p.t_read_rel,
       p.t_click_rel},
      {Action::Skip, Relevance::Relevant, p.p_skip_rel(), 0.0, p.t_skip_rel},
      {Action::Click, Relevance::NonRelevant, p.p_click_nonrel(), 0.0,
       p.t_click_nonrel},
      {Action::Skip, Relevance::NonRelevant, p.p_skip_nonrel, 0.0,
       p.t_skip_nonrel},
  }};
}

double expected_benefit(const CardProfile& profile, Action action) {
  double total = 0.0;
  for (const auto& o : action_outcomes(profile)) {
    if (o.action == action) total += o.probability * o.benefit;
  }
  return total;
}

double expected_cost(const CardProfile& profile, Action action) {
  double total = 0.0;
  for (const auto& o : action_outcomes(profile)) {
    if (o.action == action) total += o.probability * o.cost;
  }
  return total;
}

double epu_card(const CardProfile& profile, double p_rel) {
  double total = 0.0;
  for (const auto& o : action_outcomes(profile)) {
    const double p_branch =
        o.relevance == Relevance::Relevant ? p_rel : 1.0 - p_rel;
    total += o.probability * p_branch * (o.benefit - o.cost);
  }
  return total;
}

double epu_list(std::span<const EpuTerm> terms) {
  if (terms.empty()) throw DataError("epu_list: empty result list");
  double total = 0.0;
  double none_relevant_yet = 1.0;
  for (const auto& term : terms) {
    if (!(term.p_rel >= 0.0 && term.p_rel <= 1.0)) {
      throw DataError("epu_list: p_rel out of range");
    }
    total += none_relevant_yet * term.card_epu;
    none_relevant_yet *= 1.0 - term.p_rel;
  }
  return total;
}

double epu_list(std::span<const ListItem> items) {
  std::vector<EpuTerm> terms;
  terms.reserve(items.size());
  for (const auto& item : items) {
    terms.push_back({item.p_rel, epu_card(*item.profile, item.p_rel)});
  }
  return epu_list(terms);
}

}  // namespace iprp
