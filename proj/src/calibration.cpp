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

#include "iprp/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iprp/core.hpp"

namespace iprp {

CalibrationModel validate_model(const CalibrationModel& model) {
  if (!(model.score_std > 0.0) || !std::isfinite(model.score_std)) {
    throw DataError("calibration model: score_std must be > 0");
  }
  if (!std::isfinite(model.score_mean) || !std::isfinite(model.slope) ||
      !std::isfinite(model.intercept)) {
    throw DataError("calibration model: coefficients must be finite");
  }
  if (!(model.r_squared >= 0.0 && model.r_squared <= 1.0)) {
    throw DataError("calibration model: r_squared must lie in [0, 1]");
  }
  return model;
}

namespace {

struct Moments {
  double mean;
  double std;
};

Moments population_moments(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const auto mx = population_moments(x);
  const auto my = population_moments(y);
  if (mx.std == 0.0 || my.std == 0.0) return 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx.mean) * (y[i] - my.mean);
  }
  cov /= static_cast<double>(x.size());
  return cov / (mx.std * my.std);
}

}  // namespace

std::vector<double> z_normalize(std::span<const double> scores) {
  if (scores.size() < 2) {
    throw DataError("z_normalize: need at least 2 scores");
  }
  const auto m = population_moments(scores);
  if (!(m.std > 0.0)) throw DataError("z_normalize: zero variance");
  std::vector<double> z;
  z.reserve(scores.size());
  for (double s : scores) z.push_back((s - m.mean) / m.std);
  return z;
}

double logistic_map(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

CalibrationModel fit_relevance_model(std::span<const ScoredLabel> pairs,
                                     const FitOptions& options) {
  if (pairs.size() < 10) {
    throw DataError("fit_relevance_model: need at least 10 pairs, got " +
                    std::to_string(pairs.size()));
  }
  std::vector<double> scores;
  std::vector<double> labels;
  scores.reserve(pairs.size());
  labels.reserve(pairs.size());
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& p : pairs) {
    if (p.rel != 0 && p.rel != 1) {
      throw DataError("fit_relevance_model: labels must be 0 or 1");
    }
    scores.push_back(p.score);
    labels.push_back(p.rel);
    (p.rel == 1 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw DataError("fit_relevance_model: single class");
  }

  const auto moments = population_moments(scores);
  const auto z = z_normalize(scores);
  const double n = static_cast<double>(z.size());

  // With unit-variance, zero-mean z the Hessian of the mean log-likelihood is
  // bounded by I/4, so a step of 4 is the 1/L step and ascent is monotone.
  constexpr double kStep = 4.0;
  double slope = 0.0;
  double intercept = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double g_slope = 0.0;
    double g_intercept = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double residual = labels[i] - logistic_map(slope * z[i] + intercept);
      g_slope += residual * z[i];
      g_intercept += residual;
    }
    g_slope /= n;
    g_intercept /= n;
    if (std::max(std::abs(g_slope), std::abs(g_intercept)) < options.tolerance) {
      break;
    }
    slope += kStep * g_slope;
    intercept += kStep * g_intercept;
  }

  std::vector<double> fitted;
  fitted.reserve(z.size());
  for (double zi : z) fitted.push_back(logistic_map(slope * zi + intercept));
  const double r = pearson(fitted, labels);

  CalibrationModel model;
  model.score_mean = moments.mean;
  model.score_std = moments.std;
  model.slope = slope;
  model.intercept = intercept;
  model.r_squared = std::clamp(r * r, 0.0, 1.0);
  return model;
}

double predict_p_rel(const CalibrationModel& model, double score) {
  const double z = (score - model.score_mean) / model.score_std;
  return std::clamp(logistic_map(model.slope * z + model.intercept), 0.0, 1.0);
}

}  // namespace iprp
