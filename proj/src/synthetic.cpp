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

#include "iprp/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "iprp/calibration.hpp"
#include "iprp/random.hpp"

namespace iprp {

SyntheticCollection make_synthetic_collection(const SyntheticOptions& options) {
  if (options.topics < 1 || options.candidates < 1) {
    throw DataError("synthetic collection needs >= 1 topic and candidate");
  }
  if (!(options.score_std > 0.0)) {
    throw DataError("synthetic collection needs score_std > 0");
  }
  SyntheticCollection out;
  for (int t = 0; t < options.topics; ++t) {
    const std::string topic = std::to_string(options.first_topic_id + t);
    Rng rng(derive_seed(options.seed, stable_hash(topic)));
    std::vector<double> scores;
    for (int d = 0; d < options.candidates; ++d) {
      scores.push_back(options.score_mean +
                       options.score_std * standard_normal(rng));
    }
    std::sort(scores.begin(), scores.end(), std::greater<>());
    for (int d = 0; d < options.candidates; ++d) {
      const std::string doc = topic + "-d" + std::to_string(d + 1);
      const double s = scores[static_cast<std::size_t>(d)];
      const double z = (s - options.score_mean) / options.score_std;
      const double p = logistic_map(options.true_slope * z + options.true_intercept);
      out.run.push_back({topic, doc, d + 1, s, "synthetic"});
      out.qrels.push_back({topic, "0", doc, bernoulli(rng, p) ? 1 : 0});
    }
  }
  return out;
}

namespace {

double lognormal_with_mean(Rng& rng, double mean, double cv) {
  if (mean <= 0.0) return 1e-3;
  const double sigma = std::sqrt(std::log1p(cv * cv));
  const double mu = std::log(mean) - 0.5 * sigma * sigma;
  return std::exp(mu + sigma * standard_normal(rng));
}

}  // namespace

std::vector<AnnotationRecord> make_synthetic_annotations(
    const ProfileSet& profiles, const AnnotationOptions& options) {
  if (profiles.empty()) throw DataError("synthetic annotations need profiles");
  if (options.records < 0 || options.users < 1) {
    throw DataError("synthetic annotations need records >= 0 and users >= 1");
  }
  std::vector<CardType> cards;
  for (const auto& [type, unused] : profiles) cards.push_back(type);

  Rng rng(derive_seed(options.seed, stable_hash("annotations")));
  std::map<std::pair<int, CardType>, double> caps;
  std::vector<AnnotationRecord> records;
  records.reserve(static_cast<std::size_t>(options.records));
  static constexpr std::array<const char*, 3> kTopics = {"341", "363", "408"};
  for (int i = 0; i < options.records; ++i) {
    const int user = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(options.users)));
    const CardType card = cards[uniform_index(rng, cards.size())];
    const CardProfile& p = profiles.at(card);
    AnnotationRecord r;
    r.user_id = "u" + std::to_string(user + 1);
    r.topic_id = kTopics[uniform_index(rng, kTopics.size())];
    r.doc_id = "d" + std::to_string(i + 1);
    r.card_type = card;
    r.rel_label = bernoulli(rng, 0.5) ? 1 : 0;
    const Relevance rel = r.relevance();
    r.action = bernoulli(rng, p.probability(Action::Click, rel)) ? Action::Click
                                                                  : Action::Skip;
    r.decision_time =
        lognormal_with_mean(rng, p.decision_time(r.action, rel), options.time_cv);
    if (r.action == Action::Click) {
      if (rel == Relevance::Relevant) {
        auto [it, first] = caps.try_emplace({user, card}, 0.0);
        if (first) {
          it->second = p.t_read_rel * (0.8 + 0.4 * uniform01(rng));
          r.read_time = it->second;
        } else {
          r.read_time = it->second * (0.5 + 0.5 * uniform01(rng));
        }
      } else {
        r.read_time = 0.1 * p.t_read_rel * (0.5 + uniform01(rng));
      }
      if (*r.read_time <= 0.0) r.read_time.reset();
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace iprp
