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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "iprp/estimation.hpp"
#include "iprp/random.hpp"
#include "iprp/formats.hpp"
#include "iprp/synthetic.hpp"

using namespace iprp;

namespace {

AnnotationRecord rec(std::string user, CardType card, int rel, Action action,
                     double decision, std::optional<double> read = std::nullopt) {
  static int doc = 0;
  return {std::move(user), "341", "d" + std::to_string(++doc), card, rel,
          action,          decision, read};
}

ProfileSet shipped_profiles() {
  return parse_profiles_file(std::string(IPRP_DATA_DIR) + "/default_profiles.txt");
}

// Smallest log with every cell populated for every card type.
std::vector<AnnotationRecord> complete_log() {
  std::vector<AnnotationRecord> log;
  for (CardType c : kAllCardTypes) {
    log.push_back(rec("u1", c, 1, Action::Click, 4.0, 20.0));
    log.push_back(rec("u1", c, 1, Action::Skip, 5.0));
    log.push_back(rec("u2", c, 0, Action::Click, 3.0));
    log.push_back(rec("u2", c, 0, Action::Skip, 4.5));
  }
  return log;
}

}  // namespace

TEST_CASE("action probabilities by counting") {
  std::vector<AnnotationRecord> log;
  for (int i = 0; i < 10; ++i) {
    log.push_back(rec("u1", CardType::TS, 1, i < 8 ? Action::Click : Action::Skip, 3.0,
                      i < 8 ? std::optional(10.0) : std::nullopt));
  }
  const auto table = estimate_action_probabilities(log);
  CHECK(table.at(CardType::TS, Relevance::Relevant).p_click() == doctest::Approx(0.8));
  CHECK(table.at(CardType::TS, Relevance::Relevant).p_skip() == doctest::Approx(0.2));
  CHECK_THROWS_WITH_AS(table.at(CardType::TI, Relevance::NonRelevant),
                       "no observations for cell (TI, non-relevant)", DataError);
}

TEST_CASE("graded labels are binarized") {
  std::vector<AnnotationRecord> log = {rec("u1", CardType::T, 2, Action::Click, 1.0),
                                       rec("u1", CardType::T, 0, Action::Skip, 1.0)};
  const auto table = estimate_action_probabilities(log);
  CHECK(table.at(CardType::T, Relevance::Relevant).shown == 1);
  CHECK(table.at(CardType::T, Relevance::NonRelevant).shown == 1);
}

TEST_CASE("action times") {
  std::vector<AnnotationRecord> log = {
      rec("u1", CardType::TS, 1, Action::Click, 4.0, 9.0),
      rec("u2", CardType::TS, 1, Action::Click, 4.26, 9.0),
      rec("u1", CardType::TS, 0, Action::Skip, 7.0),
  };
  const auto times = estimate_action_times(log);
  CHECK(times.at(Action::Click, CardType::TS, Relevance::Relevant).mean ==
        doctest::Approx(4.13).epsilon(1e-12));
  const auto& single = times.at(Action::Skip, CardType::TS, Relevance::NonRelevant);
  CHECK(single.mean == 7.0);
  CHECK(single.std == 0.0);
  CHECK_THROWS_AS(times.at(Action::Skip, CardType::TI, Relevance::Relevant), DataError);
}

TEST_CASE("property: cell estimates are order invariant") {
  auto log = make_synthetic_annotations(shipped_profiles(), {2000, 20, 5, 0.3});
  const auto probs = estimate_action_probabilities(log);
  const auto times = estimate_action_times(log);
  const auto reads = estimate_reading_time(log);
  Rng rng(8);
  for (int round = 0; round < 5; ++round) {
    for (std::size_t i = log.size() - 1; i > 0; --i) {
      std::swap(log[i], log[uniform_index(rng, i + 1)]);
    }
    const auto p2 = estimate_action_probabilities(log);
    for (const auto& [key, cell] : probs.cells()) {
      CHECK(p2.at(key.first, key.second).clicks == cell.clicks);
      CHECK(p2.at(key.first, key.second).shown == cell.shown);
    }
    const auto t2 = estimate_action_times(log);
    for (const auto& [key, cell] : times.cells()) {
      const auto& [a, c, r] = key;
      CHECK(t2.at(a, c, r).mean == doctest::Approx(cell.mean).epsilon(1e-12));
      CHECK(t2.at(a, c, r).std == doctest::Approx(cell.std).epsilon(1e-9));
    }
    const auto r2 = estimate_reading_time(log);
    for (const auto& [card, v] : reads.values()) {
      CHECK(r2.at(card) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("reading time is the mean over users of each user's longest read") {
  std::vector<AnnotationRecord> log = {
      rec("A", CardType::TS, 1, Action::Click, 3.0, 10.0),
      rec("A", CardType::TS, 1, Action::Click, 3.0, 30.0),
      rec("B", CardType::TS, 1, Action::Click, 3.0, 20.0),
      // Ignored: non-relevant click, skip.
      rec("B", CardType::TS, 0, Action::Click, 3.0, 99.0),
      rec("C", CardType::TS, 1, Action::Skip, 3.0),
  };
  CHECK(estimate_reading_time(log).at(CardType::TS) == doctest::Approx(25.0));

  log.push_back(rec("A", CardType::TS, 1, Action::Click, 3.0, 12.0));
  CHECK(estimate_reading_time(log).at(CardType::TS) == doctest::Approx(25.0));

  std::vector<AnnotationRecord> one = {rec("A", CardType::T, 1, Action::Click, 1.0, 7.5)};
  CHECK(estimate_reading_time(one).at(CardType::T) == 7.5);
  CHECK_THROWS_AS(estimate_reading_time(one).at(CardType::TIS), DataError);
}

TEST_CASE("build_profiles") {
  const auto profiles = build_profiles(complete_log());
  REQUIRE(profiles.size() == 4);
  for (const auto& [type, p] : profiles) {
    CHECK(validate_profile(p) == p);
    CHECK(p.height_rows == card_height(type));
    CHECK(p.p_click_rel == 0.5);
    CHECK(p.t_read_rel == 20.0);
  }

  auto heights = default_heights();
  heights[CardType::T] = 2;
  CHECK(build_profiles(complete_log(), heights).at(CardType::T).height_rows == 2);

  auto missing = complete_log();
  std::erase_if(missing, [](const AnnotationRecord& r) { return r.card_type == CardType::TI; });
  try {
    build_profiles(missing);
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("TI") != std::string::npos);
  }
}

TEST_CASE("estimates converge to the generating profile") {
  const auto truth = shipped_profiles();
  const auto log = make_synthetic_annotations(truth, {10000, 150, 42, 0.25});
  const auto est = build_profiles(log);
  for (const auto& [type, t] : truth) {
    const auto& e = est.at(type);
    CAPTURE(to_string(type));
    CHECK(std::abs(e.p_click_rel - t.p_click_rel) <= 0.02);
    CHECK(std::abs(e.p_skip_nonrel - t.p_skip_nonrel) <= 0.02);
    for (double CardProfile::*f : {&CardProfile::t_click_rel, &CardProfile::t_skip_rel,
                                   &CardProfile::t_click_nonrel,
                                   &CardProfile::t_skip_nonrel, &CardProfile::t_read_rel}) {
      CHECK(std::abs(e.*f - t.*f) <= 0.05 * t.*f);
    }
  }
}
