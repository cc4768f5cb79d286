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

#ifndef IPRP_RETRIEVAL_HPP_
#define IPRP_RETRIEVAL_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iprp {

// Lowercase ASCII, split on anything that is not [a-z0-9], drop empties.
std::vector<std::string> tokenize(std::string_view text);

struct Document {
  std::string doc_id;
  std::string text;
};

struct Posting {
  std::string doc_id;
  int tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;
};

// Immutable inverted index; postings are sorted by doc_id.
class Index {
 public:
  using Postings = std::map<std::string, std::vector<Posting>, std::less<>>;
  using DocLengths = std::map<std::string, int, std::less<>>;

  // Throws DataError on an empty corpus or duplicate doc ids.
  static Index build(std::span<const Document> corpus);

  // Reassembles a persisted index and re-checks its invariants.
  static Index from_parts(Postings postings, DocLengths doc_lengths);

  const Postings& postings() const { return postings_; }
  const DocLengths& doc_lengths() const { return doc_lengths_; }
  double avg_doc_length() const { return avg_doc_length_; }
  std::size_t doc_count() const { return doc_lengths_.size(); }

  // Top-k documents by BM25, descending, ties by ascending doc_id. Each query
  // token contributes once per occurrence. Throws DataError if k < 1.
  std::vector<ScoredDoc> bm25_rank(std::string_view query, int k,
                                   const Bm25Params& params = {}) const;

  friend bool operator==(const Index& a, const Index& b) {
    return a.postings_ == b.postings_ && a.doc_lengths_ == b.doc_lengths_;
  }

 private:
  Index(Postings postings, DocLengths doc_lengths);

  Postings postings_;
  DocLengths doc_lengths_;
  double avg_doc_length_ = 0.0;
};

// Smoothed idf: ln((N - df + 0.5) / (df + 0.5) + 1), never negative.
double bm25_idf(std::size_t doc_count, std::size_t doc_freq);

struct Query {
  std::string topic_id;
  std::string text;
};

// Ranks every query; queries run in parallel, output keeps query order.
std::vector<std::vector<ScoredDoc>> rank_queries(const Index& index,
                                                 std::span<const Query> queries,
                                                 int k,
                                                 const Bm25Params& params = {});

}  // namespace iprp

#endif  // IPRP_RETRIEVAL_HPP_
