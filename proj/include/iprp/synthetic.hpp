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

#ifndef IPRP_SYNTHETIC_HPP_
#define IPRP_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "iprp/formats.hpp"

namespace iprp {

// Desk-scale stand-in for a judged test collection: per topic, `candidates`
// normally distributed retrieval scores, each judged relevant with
// probability logistic(true_slope * z + true_intercept).
struct SyntheticOptions {
  int topics = 50;
  int candidates = 20;
  std::uint64_t seed = 1;
  double score_mean = 12.0;
  double score_std = 4.0;
  double true_slope = 2.0;
  double true_intercept = -0.5;
  int first_topic_id = 301;
};

struct SyntheticCollection {
  std::vector<RunEntry> run;
  std::vector<QrelEntry> qrels;
};

SyntheticCollection make_synthetic_collection(const SyntheticOptions& options);

// Simulated annotation sessions drawn from known card profiles. Card type and
// binary relevance are uniform per impression; clicks follow P(c|R) and
// P(c|R̄); decision times are lognormal around the profile's mean with the
// given coefficient of variation. Every (user, card) pair has a reading cap
// drawn uniformly from [0.8, 1.2] * T(read|R); its first relevant click reads
// for exactly the cap and later ones for 50-100% of it.
struct AnnotationOptions {
  int records = 10000;
  int users = 150;
  std::uint64_t seed = 1;
  double time_cv = 0.25;
};

std::vector<AnnotationRecord> make_synthetic_annotations(
    const ProfileSet& profiles, const AnnotationOptions& options);

}  // namespace iprp

#endif  // IPRP_SYNTHETIC_HPP_
