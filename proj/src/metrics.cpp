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

#include "iprp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

namespace iprp {

MetricConfig validate_config(const MetricConfig& config) {
  if (!(config.rbo_persistence > 0.0 && config.rbo_persistence < 1.0)) {
    throw DataError("rbo persistence must lie in (0, 1)");
  }
  if (!(config.tbg_halflife > 0.0) || !std::isfinite(config.tbg_halflife)) {
    throw DataError("tbg half-life must be > 0");
  }
  if (!std::isfinite(config.tbg_gain_scale)) {
    throw DataError("tbg gain scale must be finite");
  }
  return config;
}

namespace {

void require_distinct(std::span<const std::string> list, const char* name) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : list) {
    if (!seen.insert(id).second) {
      throw DataError(std::string("rbo: duplicate '") + id + "' in " + name);
    }
  }
}

}  // namespace

double rbo(std::span<const std::string> list_a,
           std::span<const std::string> list_b, double p) {
  if (list_a.empty() || list_b.empty()) throw DataError("rbo: empty list");
  if (!(p > 0.0 && p < 1.0)) throw DataError("rbo: p must lie in (0, 1)");
  require_distinct(list_a, "first list");
  require_distinct(list_b, "second list");
  if (std::equal(list_a.begin(), list_a.end(), list_b.begin(), list_b.end())) {
    return 1.0;
  }

  const bool a_shorter = list_a.size() <= list_b.size();
  const auto shorter = a_shorter ? list_a : list_b;
  const auto longer = a_shorter ? list_b : list_a;
  const std::size_t s = shorter.size();
  const std::size_t l = longer.size();

  // overlap tracks |S[:min(d,s)] ∩ L[:d]|.
  std::unordered_set<std::string_view> seen_s;
  std::unordered_set<std::string_view> seen_l;
  std::size_t overlap = 0;
  std::size_t overlap_at_s = 0;
  double series = 0.0;
  double p_d = 1.0;
  for (std::size_t d = 1; d <= l; ++d) {
    p_d *= p;
    const std::string_view x = longer[d - 1];
    if (seen_s.contains(x)) ++overlap;
    seen_l.insert(x);
    if (d <= s) {
      const std::string_view y = shorter[d - 1];
      if (x == y) {
        ++overlap;
      } else if (seen_l.contains(y)) {
        ++overlap;
      }
      seen_s.insert(y);
      if (d == s) overlap_at_s = overlap;
    }
    const double dd = static_cast<double>(d);
    double agreement = static_cast<double>(overlap) / dd;
    if (d > s) {
      agreement += static_cast<double>(overlap_at_s) *
                   static_cast<double>(d - s) / (static_cast<double>(s) * dd);
    }
    series += agreement * p_d;
  }
  const double xl = static_cast<double>(overlap);
  const double xs = static_cast<double>(overlap_at_s);
  const double tail =
      ((xl - xs) / static_cast<double>(l) + xs / static_cast<double>(s)) * p_d;
  return std::clamp((1.0 - p) / p * series + tail, 0.0, 1.0);
}

double dcg_of_page(std::span<const int> rel_labels, bool graded) {
  double dcg = 0.0;
  for (std::size_t i = 0; i < rel_labels.size(); ++i) {
    const int label = rel_labels[i];
    if (label <= 0) continue;
    const double gain = graded ? std::exp2(label) - 1.0 : 1.0;
    dcg += gain / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double decay(double t, double h) {
  return std::exp(-t * std::numbers::ln2 / h);
}

double expected_card_time(const CardProfile& c, double p_rel) {
  const double relevant = c.p_click_rel * (c.t_click_rel + c.t_read_rel) +
                          c.p_skip_rel() * c.t_skip_rel;
  const double nonrelevant = c.p_click_nonrel() * c.t_click_nonrel +
                             c.p_skip_nonrel * c.t_skip_nonrel;
  return p_rel * relevant + (1.0 - p_rel) * nonrelevant;
}

double tbg_of_page(std::span<const CardProfile> cards,
                   std::span<const double> p_rels,
                   std::span<const int> rel_labels, double h,
                   double gain_scale) {
  if (cards.size() != p_rels.size() || cards.size() != rel_labels.size()) {
    throw DataError("tbg_of_page: length mismatch");
  }
  double tbg = 0.0;
  double elapsed = 0.0;
  for (std::size_t k = 0; k < cards.size(); ++k) {
    if (rel_labels[k] > 0) {
      tbg += gain_scale * cards[k].p_click_rel * decay(elapsed, h);
    }
    elapsed += expected_card_time(cards[k], p_rels[k]);
  }
  return tbg;
}

double tbg_of_page(const SerpLayout& page, const ProfileSet& profiles, double h,
                   double gain_scale) {
  std::vector<CardProfile> cards;
  std::vector<double> p_rels;
  std::vector<int> labels;
  for (const auto& placed : page.shown) {
    cards.push_back(require_profile(profiles, placed.card));
    p_rels.push_back(placed.item.p_rel);
    labels.push_back(placed.item.is_relevant() ? 1 : 0);
  }
  return tbg_of_page(cards, p_rels, labels, h, gain_scale);
}

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw DataError("anova: need at least 2 groups");
  double grand_sum = 0.0;
  std::size_t total = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw DataError("anova: every group needs >= 2 values");
    for (double v : g) grand_sum += v;
    total += g.size();
  }
  const double grand_mean = grand_sum / static_cast<double>(total);
  double ssb = 0.0;
  double ssw = 0.0;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (double v : g) sum += v;
    const double mean = sum / static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) ssw += (v - mean) * (v - mean);
  }
  if (!(ssw > 0.0)) throw DataError("anova: zero within-group variance");
  AnovaResult result;
  result.df_between = static_cast<int>(groups.size()) - 1;
  result.df_within = static_cast<int>(total - groups.size());
  result.f = (ssb / result.df_between) / (ssw / result.df_within);
  return result;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw DataError("summarize: empty input");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

}  // namespace iprp
