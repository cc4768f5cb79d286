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

#ifndef IPRP_FORMATS_HPP_
#define IPRP_FORMATS_HPP_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iprp/calibration.hpp"
#include "iprp/core.hpp"
#include "iprp/metrics.hpp"
#include "iprp/retrieval.hpp"

namespace iprp {

// All parsers reject malformed input with a DataError of the form
// "<source>:<line>: <message>".

// TREC run line: topic Q0 doc rank score tag.
struct RunEntry {
  std::string topic_id;
  std::string doc_id;
  int rank = 1;
  double score = 0.0;
  std::string tag;

  friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

// TREC qrels line: topic iteration doc label.
struct QrelEntry {
  std::string topic_id;
  std::string iteration = "0";
  std::string doc_id;
  int rel_label = 0;

  friend bool operator==(const QrelEntry&, const QrelEntry&) = default;
};

class QrelTable {
 public:
  QrelTable() = default;
  // Throws DataError on a duplicate (topic, doc) pair.
  explicit QrelTable(std::span<const QrelEntry> entries);

  std::optional<int> label(std::string_view topic_id,
                           std::string_view doc_id) const;
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, int, std::less<>> labels_;
};

std::vector<RunEntry> parse_run(std::istream& in,
                                std::string_view source = "<run>");
std::vector<RunEntry> parse_run_file(const std::filesystem::path& path);
void write_run(std::ostream& out, std::span<const RunEntry> entries);

std::vector<QrelEntry> parse_qrels(std::istream& in,
                                   std::string_view source = "<qrels>");
std::vector<QrelEntry> parse_qrels_file(const std::filesystem::path& path);
void write_qrels(std::ostream& out, std::span<const QrelEntry> entries);

inline constexpr std::string_view kAnnotationHeader =
    "user_id,topic_id,doc_id,card_type,rel_label,action,decision_time,"
    "read_time";

std::vector<AnnotationRecord> parse_annotation_log(
    std::istream& in, std::string_view source = "<log>");
std::vector<AnnotationRecord> parse_annotation_log_file(
    const std::filesystem::path& path);
void write_annotation_log(std::ostream& out,
                          std::span<const AnnotationRecord> records);

// INI-style: one [CardType] section per profile, every CardProfile field as
// "key = value". Comments start with '#'.
ProfileSet parse_profiles(std::istream& in,
                          std::string_view source = "<profiles>");
ProfileSet parse_profiles_file(const std::filesystem::path& path);
void write_profiles(std::ostream& out, const ProfileSet& profiles);

// "key = value" lines for score_mean, score_std, slope, intercept, r_squared.
CalibrationModel parse_model(std::istream& in,
                             std::string_view source = "<model>");
CalibrationModel parse_model_file(const std::filesystem::path& path);
void write_model(std::ostream& out, const CalibrationModel& model);

// "id<TAB>text" per line; used for both corpora and topic files.
std::vector<Document> parse_corpus(std::istream& in,
                                   std::string_view source = "<corpus>");
std::vector<Document> parse_corpus_file(const std::filesystem::path& path);
std::vector<Query> parse_topics_file(const std::filesystem::path& path);

void write_index(std::ostream& out, const Index& index);
Index parse_index(std::istream& in, std::string_view source = "<index>");
// An index directory holds a single index.tsv.
void save_index(const std::filesystem::path& dir, const Index& index);
Index load_index(const std::filesystem::path& dir);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
// Strict: the whole field must be a finite number.
std::optional<double> parse_double(std::string_view text);
std::optional<int> parse_int(std::string_view text);

std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace iprp

#endif  // IPRP_FORMATS_HPP_
