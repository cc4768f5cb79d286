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
#include <sstream>
#include <string>
#include <vector>

#include "iprp/core.hpp"
#include "iprp/formats.hpp"
#include "iprp/random.hpp"
#include "iprp/retrieval.hpp"

using namespace iprp;

TEST_CASE("tokenize") {
  CHECK(tokenize("Hello, World! x2--y") ==
        std::vector<std::string>{"hello", "world", "x2", "y"});
  CHECK(tokenize("  ,, ").empty());
}

TEST_CASE("build_index") {
  const std::vector<Document> corpus = {{"d2", "b c"}, {"d1", "a b"}};
  const auto index = Index::build(corpus);
  CHECK(index.doc_count() == 2);
  CHECK(index.avg_doc_length() == 2.0);
  REQUIRE(index.postings().size() == 3);
  const auto& b = index.postings().at("b");
  REQUIRE(b.size() == 2);
  CHECK(b[0].doc_id == "d1");
  CHECK(b[1].doc_id == "d2");
  CHECK(index.postings().at("a").size() == 1);
  CHECK(Index::build(corpus) == index);

  CHECK_THROWS_AS(Index::build(std::vector<Document>{}), DataError);
  const std::vector<Document> dup = {{"d1", "x"}, {"d1", "y"}};
  CHECK_THROWS_AS(Index::build(dup), DataError);
}

TEST_CASE("bm25 against hand-evaluated scores") {
  const std::vector<Document> corpus = {
      {"d1", "the cat sat"}, {"d2", "the cat cat dog"}, {"d3", "a dog barks"}};
  const auto index = Index::build(corpus);
  const auto ranked = index.bm25_rank("cat dog", 10);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].doc_id == "d2");
  CHECK(std::abs(ranked[0].score - 1.0462961802661024) <= 1e-9);
  // d1 and d3 tie; ascending doc_id breaks it.
  CHECK(ranked[1].doc_id == "d1");
  CHECK(ranked[2].doc_id == "d3");
  CHECK(std::abs(ranked[1].score - 0.4900511774126154) <= 1e-9);
  CHECK(std::abs(ranked[2].score - 0.4900511774126154) <= 1e-9);

  CHECK(index.bm25_rank("cat dog", 1).size() == 1);
  CHECK(index.bm25_rank("", 5).empty());
  CHECK(index.bm25_rank("zebra", 5).empty());
  CHECK_THROWS_AS(index.bm25_rank("cat", 0), DataError);

  const auto with_absent = index.bm25_rank("cat dog zebra", 10);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    CHECK(with_absent[i].score == ranked[i].score);
  }
}

TEST_CASE("single document corpus") {
  const std::vector<Document> corpus = {{"only", "tropical storms"}};
  const auto ranked = Index::build(corpus).bm25_rank("storms", 3);
  REQUIRE(ranked.size() == 1);
  CHECK(ranked[0].doc_id == "only");
  CHECK(ranked[0].score > 0.0);
}

TEST_CASE("property: scores nonnegative; extra query-term occurrences never hurt at fixed length") {
  Rng rng(21);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Document> corpus;
    for (int d = 0; d < 8; ++d) {
      std::string text;
      const auto len = 1 + uniform_index(rng, 10);
      for (std::size_t i = 0; i < len; ++i) text += vocab[uniform_index(rng, vocab.size())] + " ";
      corpus.push_back({"d" + std::to_string(d), text});
    }
    const std::string query = "a c";
    const auto before = Index::build(corpus).bm25_rank(query, 100);
    for (const auto& s : before) CHECK(s.score >= 0.0);

    // Swap one non-query token for a query token: lengths stay fixed.
    const auto target = uniform_index(rng, corpus.size());
    auto tokens = tokenize(corpus[target].text);
    auto it = std::find_if(tokens.begin(), tokens.end(),
                           [](const std::string& t) { return t != "a" && t != "c"; });
    if (it == tokens.end()) continue;
    *it = "a";
    auto boosted = corpus;
    boosted[target].text.clear();
    for (const auto& t : tokens) boosted[target].text += t + " ";
    double old_score = 0.0, new_score = 0.0;
    for (const auto& s : before) {
      if (s.doc_id == corpus[target].doc_id) old_score = s.score;
    }
    for (const auto& s : Index::build(boosted).bm25_rank(query, 100)) {
      if (s.doc_id == corpus[target].doc_id) new_score = s.score;
    }
    CHECK(new_score >= old_score - 1e-12);
  }
}

TEST_CASE("parallel rank_queries matches per-query ranking") {
  const std::vector<Document> corpus = {
      {"d1", "airport security lines"}, {"d2", "tunnel disaster"}, {"d3", "tropical storms"},
      {"d4", "airport tunnel"}};
  const auto index = Index::build(corpus);
  const std::vector<Query> queries = {{"341", "airport security"},
                                      {"363", "tunnel disaster"},
                                      {"408", "tropical storms"}};
  const auto all = rank_queries(index, queries, 2);
  REQUIRE(all.size() == 3);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto one = index.bm25_rank(queries[q].text, 2);
    REQUIRE(all[q].size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(all[q][i].doc_id == one[i].doc_id);
      CHECK(all[q][i].score == one[i].score);
    }
  }
}

TEST_CASE("index persistence round trip and corruption checks") {
  const std::vector<Document> corpus = {{"d1", "a b b"}, {"d2", "b c"}};
  const auto index = Index::build(corpus);
  std::stringstream buf;
  write_index(buf, index);
  CHECK(parse_index(buf) == index);

  std::istringstream bad("iprp-index 1\ndocs\t1\nd1\t2\nterms\t1\nb\td9\t1\n");
  CHECK_THROWS_AS(parse_index(bad), DataError);
  std::istringstream garbage("hello\n");
  CHECK_THROWS_AS(parse_index(garbage), DataError);
}
