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

// Independent reference computations used only by tests. Nothing here calls
// into the library's metric or utility code.

#ifndef IPRP_TESTS_ORACLES_HPP_
#define IPRP_TESTS_ORACLES_HPP_

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "iprp/core.hpp"
#include "iprp/random.hpp"

namespace iprp::oracle {

// Card utility by explicit enumeration of the four (relevance, action)
// outcomes, written out term by term.
inline double epu_card(const CardProfile& c, double p_rel) {
  const double p_nonrel = 1.0 - p_rel;
  const double click_rel = c.p_click_rel * p_rel * (c.t_read_rel - c.t_click_rel);
  const double skip_rel = (1.0 - c.p_click_rel) * p_rel * (0.0 - c.t_skip_rel);
  const double click_nonrel =
      (1.0 - c.p_skip_nonrel) * p_nonrel * (0.0 - c.t_click_nonrel);
  const double skip_nonrel = c.p_skip_nonrel * p_nonrel * (0.0 - c.t_skip_nonrel);
  return click_rel + skip_rel + click_nonrel + skip_nonrel;
}

// Extrapolated RBO as the (truncated) infinite series
//   (1 - p) * sum_{d>=1} A'_d p^(d-1)
// where A'_d is the prefix agreement computed from scratch with sets, using
// the uneven-length extrapolation past the shorter list and holding the
// final agreement constant past the longer one.
inline double rbo_series(const std::vector<std::string>& a,
                         const std::vector<std::string>& b, double p,
                         int depth = 6000) {
  const auto& s = a.size() <= b.size() ? a : b;
  const auto& l = a.size() <= b.size() ? b : a;
  auto overlap = [&](std::size_t ds, std::size_t dl) {
    std::set<std::string> left(s.begin(), s.begin() + static_cast<long>(ds));
    std::size_t x = 0;
    for (std::size_t i = 0; i < dl; ++i) x += left.count(l[i]);
    return static_cast<double>(x);
  };
  const double ns = static_cast<double>(s.size());
  const double xs = overlap(s.size(), s.size());
  auto agreement = [&](std::size_t d) {
    if (d <= s.size()) return overlap(d, d) / static_cast<double>(d);
    const double dd = static_cast<double>(d);
    return (overlap(s.size(), d) + xs * (dd - ns) / ns) / dd;
  };
  std::vector<double> agree(l.size() + 1, 0.0);
  for (std::size_t d = 1; d <= l.size(); ++d) agree[d] = agreement(d);
  double sum = 0.0;
  for (int d = 1; d <= depth; ++d) {
    const auto du = static_cast<std::size_t>(d);
    const double ad = du <= l.size() ? agree[du] : agree[l.size()];
    sum += ad * std::pow(p, d - 1);
  }
  return (1.0 - p) * sum;
}

// Uniformly random valid profile.
inline CardProfile random_profile(Rng& rng) {
  CardProfile c;
  c.card_type = kAllCardTypes[uniform_index(rng, 4)];
  c.t_click_rel = 10.0 * uniform01(rng);
  c.t_click_nonrel = 10.0 * uniform01(rng);
  c.t_skip_rel = 10.0 * uniform01(rng);
  c.t_skip_nonrel = 10.0 * uniform01(rng);
  c.t_read_rel = 60.0 * uniform01(rng);
  c.p_click_rel = uniform01(rng);
  c.p_skip_nonrel = uniform01(rng);
  c.height_rows = 1 + static_cast<int>(uniform_index(rng, 6));
  return c;
}

// The profile used by the hand-worked utility examples.
inline CardProfile hand_profile() {
  CardProfile c;
  c.card_type = CardType::TS;
  c.p_click_rel = 0.8;
  c.t_read_rel = 10.0;
  c.t_click_rel = 4.0;
  c.t_skip_rel = 5.0;
  c.p_skip_nonrel = 0.7;
  c.t_click_nonrel = 4.0;
  c.t_skip_nonrel = 4.0;
  c.height_rows = 3;
  return c;
}

}  // namespace iprp::oracle

#endif  // IPRP_TESTS_ORACLES_HPP_
