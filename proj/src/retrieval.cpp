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

#include "iprp/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include "iprp/core.hpp"

namespace iprp {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) && c < 0x80) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double bm25_idf(std::size_t doc_count, std::size_t doc_freq) {
  const double n = static_cast<double>(doc_count);
  const double df = static_cast<double>(doc_freq);
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

Index::Index(Postings postings, DocLengths doc_lengths)
    : postings_(std::move(postings)), doc_lengths_(std::move(doc_lengths)) {
  double total = 0.0;
  for (const auto& [id, len] : doc_lengths_) total += len;
  avg_doc_length_ = total / static_cast<double>(doc_lengths_.size());
}

Index Index::build(std::span<const Document> corpus) {
  if (corpus.empty()) throw DataError("build_index: empty corpus");
  std::vector<const Document*> docs;
  docs.reserve(corpus.size());
  for (const auto& d : corpus) docs.push_back(&d);
  std::sort(docs.begin(), docs.end(),
            [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });

  Postings postings;
  DocLengths lengths;
  for (const Document* doc : docs) {
    if (!lengths.emplace(doc->doc_id, 0).second) {
      throw DataError("build_index: duplicate doc_id '" + doc->doc_id + "'");
    }
    const auto tokens = tokenize(doc->text);
    lengths[doc->doc_id] = static_cast<int>(tokens.size());
    std::map<std::string_view, int> tf;
    for (const auto& t : tokens) ++tf[t];
    // Docs are visited in doc_id order, so each postings list stays sorted.
    for (const auto& [term, count] : tf) {
      auto it = postings.find(term);
      if (it == postings.end()) it = postings.emplace(std::string(term), std::vector<Posting>{}).first;
      it->second.push_back({doc->doc_id, count});
    }
  }
  return Index(std::move(postings), std::move(lengths));
}

Index Index::from_parts(Postings postings, DocLengths doc_lengths) {
  if (doc_lengths.empty()) throw DataError("index: no documents");
  for (const auto& [id, len] : doc_lengths) {
    if (len < 0) throw DataError("index: negative length for doc '" + id + "'");
  }
  for (const auto& [term, list] : postings) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!doc_lengths.contains(list[i].doc_id)) {
        throw DataError("index: posting for unknown doc '" + list[i].doc_id + "'");
      }
      if (list[i].tf < 1) throw DataError("index: nonpositive tf for term '" + term + "'");
      if (i > 0 && !(list[i - 1].doc_id < list[i].doc_id)) {
        throw DataError("index: postings for term '" + term + "' not sorted by doc_id");
      }
    }
  }
  return Index(std::move(postings), std::move(doc_lengths));
}

std::vector<ScoredDoc> Index::bm25_rank(std::string_view query, int k,
                                        const Bm25Params& params) const {
  if (k < 1) throw DataError("bm25_rank: k must be >= 1");
  std::unordered_map<std::string_view, double> scores;
  for (const auto& term : tokenize(query)) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double idf = bm25_idf(doc_count(), it->second.size());
    for (const auto& posting : it->second) {
      const double len = doc_lengths_.find(posting.doc_id)->second;
      const double tf = posting.tf;
      const double norm =
          params.k1 * (1.0 - params.b + params.b * len / avg_doc_length_);
      scores[posting.doc_id] += idf * tf * (params.k1 + 1.0) / (tf + norm);
    }
  }
  std::vector<ScoredDoc> ranked;
  ranked.reserve(scores.size());
  for (const auto& [id, s] : scores) ranked.push_back({std::string(id), s});
  auto by_score = [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  };
  const auto top = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(top),
                    ranked.end(), by_score);
  ranked.resize(top);
  return ranked;
}

std::vector<std::vector<ScoredDoc>> rank_queries(const Index& index,
                                                 std::span<const Query> queries,
                                                 int k,
                                                 const Bm25Params& params) {
  if (k < 1) throw DataError("bm25_rank: k must be >= 1");
  std::vector<std::vector<ScoredDoc>> results(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    results[static_cast<std::size_t>(i)] =
        index.bm25_rank(queries[static_cast<std::size_t>(i)].text, k, params);
  }
  return results;
}

}  // namespace iprp
