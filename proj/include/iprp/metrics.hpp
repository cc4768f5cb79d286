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

#ifndef IPRP_METRICS_HPP_
#define IPRP_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "iprp/core.hpp"

namespace iprp {

struct MetricConfig {
  double rbo_persistence = 0.9;
  double tbg_halflife = 224.0;  // seconds
  double tbg_gain_scale = 1.0;  // gain per relevant click
  bool graded_dcg = false;      // 2^rel - 1 instead of binary gains
};

MetricConfig validate_config(const MetricConfig& config);

// Extrapolated rank-biased overlap. Lists must be nonempty and free of
// duplicates; lists of unequal length use the uneven-length extrapolation.
// Identical lists return exactly 1.
double rbo(std::span<const std::string> list_a,
           std::span<const std::string> list_b, double p);

// Sum of gain_i / log2(i + 1) over the shown items. Labels > 0 count as gain
// 1 unless `graded`, in which case the gain is 2^label - 1.
double dcg_of_page(std::span<const int> rel_labels, bool graded = false);

// Half-life decay exp(-t ln2 / h).
double decay(double t, double h);

// Expected seconds a linear-browsing user spends on one card.
double expected_card_time(const CardProfile& profile, double p_rel);

// sum_k g_k * decay(T_{k-1}), with g_k = scale * [rel_k > 0] * P(c|R) of card
// k and T_{k-1} the summed expected time of the cards above it. Throws
// DataError if the three sequences differ in length.
double tbg_of_page(std::span<const CardProfile> cards,
                   std::span<const double> p_rels,
                   std::span<const int> rel_labels, double h,
                   double gain_scale = 1.0);

double tbg_of_page(const SerpLayout& page, const ProfileSet& profiles, double h,
                   double gain_scale = 1.0);

struct AnovaResult {
  double f = 0.0;
  int df_between = 0;
  int df_within = 0;
};

// One-way ANOVA F statistic. Needs >= 2 groups of >= 2 values each and
// nonzero within-group variance.
AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

struct Summary {
  double mean = 0.0;
  double std = 0.0;  // population

  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(std::span<const double> values);

}  // namespace iprp

#endif  // IPRP_METRICS_HPP_
