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

#ifndef IPRP_CALIBRATION_HPP_
#define IPRP_CALIBRATION_HPP_

#include <span>
#include <vector>

namespace iprp {

// Maps a raw retrieval score to P(R):
//   logistic(slope * (score - score_mean) / score_std + intercept)
struct CalibrationModel {
  double score_mean = 0.0;
  double score_std = 1.0;
  double slope = 1.0;
  double intercept = 0.0;
  double r_squared = 0.0;

  friend bool operator==(const CalibrationModel&,
                         const CalibrationModel&) = default;
};

// Throws DataError unless score_std > 0, the coefficients are finite and
// r_squared lies in [0, 1].
CalibrationModel validate_model(const CalibrationModel& model);

// Population z-scores. Needs at least two scores that are not all equal.
std::vector<double> z_normalize(std::span<const double> scores);

double logistic_map(double z);

struct ScoredLabel {
  double score;
  int rel;  // 0 or 1
};

struct FitOptions {
  int max_iterations = 500;
  double tolerance = 1e-8;
};

// Univariate logistic regression of the label on the z-scored retrieval score,
// fitted by gradient ascent on the mean log-likelihood. r_squared is the
// squared Pearson correlation between fitted probabilities and labels.
// Requires >= 10 pairs and both classes.
CalibrationModel fit_relevance_model(std::span<const ScoredLabel> pairs,
                                     const FitOptions& options = {});

double predict_p_rel(const CalibrationModel& model, double score);

}  // namespace iprp

#endif  // IPRP_CALIBRATION_HPP_
