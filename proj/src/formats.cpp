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

#include "iprp/formats.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace iprp {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source)
      : in_(in), source_(source) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DataError(source_ + ":" + std::to_string(line_no_) + ": " + message);
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string source_;
  int line_no_ = 0;
};

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::vector<std::string_view> split_on(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

// Parses "key = value" lines; '#' starts a comment line.
struct KeyValue {
  std::string key;
  std::string value;
};

std::optional<KeyValue> parse_key_value(std::string_view line,
                                        const LineReader& reader) {
  const auto body = trim(line);
  if (body.empty() || body.front() == '#') return std::nullopt;
  const auto eq = body.find('=');
  if (eq == std::string_view::npos) reader.fail("expected 'key = value'");
  KeyValue kv{std::string(trim(body.substr(0, eq))),
              std::string(trim(body.substr(eq + 1)))};
  if (kv.key.empty()) reader.fail("empty key");
  return kv;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

// ---------------------------------------------------------------- run files

std::vector<RunEntry> parse_run(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<RunEntry> entries;
  std::string line;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    const auto f = split_whitespace(line);
    if (f.size() != 6) {
      reader.fail("expected 6 fields, got " + std::to_string(f.size()));
    }
    if (f[1] != "Q0") reader.fail("second field must be Q0");
    const auto rank = parse_int(f[3]);
    if (!rank) reader.fail("unparseable rank '" + std::string(f[3]) + "'");
    if (*rank < 1) reader.fail("rank must be positive");
    const auto score = parse_double(f[4]);
    if (!score) reader.fail("unparseable score '" + std::string(f[4]) + "'");
    entries.push_back({std::string(f[0]), std::string(f[2]), *rank, *score,
                       std::string(f[5])});
  }
  return entries;
}

std::vector<RunEntry> parse_run_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_run(in, path.string());
}

void write_run(std::ostream& out, std::span<const RunEntry> entries) {
  for (const auto& e : entries) {
    out << e.topic_id << " Q0 " << e.doc_id << ' ' << e.rank << ' '
        << format_double(e.score) << ' ' << e.tag << '\n';
  }
}

// -------------------------------------------------------------------- qrels

QrelTable::QrelTable(std::span<const QrelEntry> entries) {
  for (const auto& e : entries) {
    if (!labels_.emplace(std::pair{e.topic_id, e.doc_id}, e.rel_label).second) {
      throw DataError("duplicate qrel for (" + e.topic_id + ", " + e.doc_id + ")");
    }
  }
}

std::optional<int> QrelTable::label(std::string_view topic_id,
                                    std::string_view doc_id) const {
  auto it = labels_.find(std::pair{std::string(topic_id), std::string(doc_id)});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<QrelEntry> parse_qrels(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<QrelEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    const auto f = split_whitespace(line);
    if (f.size() != 4) {
      reader.fail("expected 4 fields, got " + std::to_string(f.size()));
    }
    const auto label = parse_int(f[3]);
    if (!label) reader.fail("unparseable relevance label '" + std::string(f[3]) + "'");
    if (*label < 0) reader.fail("negative relevance label");
    QrelEntry e{std::string(f[0]), std::string(f[1]), std::string(f[2]), *label};
    if (!seen.emplace(e.topic_id, e.doc_id).second) {
      reader.fail("duplicate qrel for (" + e.topic_id + ", " + e.doc_id + ")");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<QrelEntry> parse_qrels_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_qrels(in, path.string());
}

void write_qrels(std::ostream& out, std::span<const QrelEntry> entries) {
  for (const auto& e : entries) {
    out << e.topic_id << ' ' << e.iteration << ' ' << e.doc_id << ' '
        << e.rel_label << '\n';
  }
}

// ----------------------------------------------------------- annotation log

std::vector<AnnotationRecord> parse_annotation_log(std::istream& in,
                                                   std::string_view source) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.next(line)) return {};
  if (trim(line) != kAnnotationHeader) {
    reader.fail("expected header '" + std::string(kAnnotationHeader) + "'");
  }
  std::vector<AnnotationRecord> records;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    const auto f = split_on(line, ',');
    if (f.size() != 8) {
      reader.fail("expected 8 comma-separated fields, got " +
                  std::to_string(f.size()));
    }
    AnnotationRecord r;
    r.user_id = std::string(trim(f[0]));
    r.topic_id = std::string(trim(f[1]));
    r.doc_id = std::string(trim(f[2]));
    if (r.user_id.empty() || r.topic_id.empty() || r.doc_id.empty()) {
      reader.fail("empty identifier");
    }
    try {
      r.card_type = parse_card_type(trim(f[3]));
    } catch (const DataError& e) {
      reader.fail(e.what());
    }
    const auto label = parse_int(trim(f[4]));
    if (!label) reader.fail("unparseable rel_label");
    r.rel_label = *label;
    const auto action = trim(f[5]);
    if (action == "click") {
      r.action = Action::Click;
    } else if (action == "skip") {
      r.action = Action::Skip;
    } else {
      reader.fail("unknown action '" + std::string(action) + "'");
    }
    const auto decision = parse_double(trim(f[6]));
    if (!decision) reader.fail("unparseable decision_time");
    r.decision_time = *decision;
    const auto read = trim(f[7]);
    if (!read.empty()) {
      const auto value = parse_double(read);
      if (!value) reader.fail("unparseable read_time");
      r.read_time = *value;
    }
    try {
      records.push_back(validate_record(r));
    } catch (const DataError& e) {
      reader.fail(e.what());
    }
  }
  return records;
}

std::vector<AnnotationRecord> parse_annotation_log_file(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_annotation_log(in, path.string());
}

void write_annotation_log(std::ostream& out,
                          std::span<const AnnotationRecord> records) {
  out << kAnnotationHeader << '\n';
  for (const auto& r : records) {
    out << r.user_id << ',' << r.topic_id << ',' << r.doc_id << ','
        << to_string(r.card_type) << ',' << r.rel_label << ','
        << to_string(r.action) << ',' << format_double(r.decision_time) << ',';
    if (r.read_time) out << format_double(*r.read_time);
    out << '\n';
  }
}

// ----------------------------------------------------------------- profiles

namespace {

constexpr std::array<std::string_view, 8> kProfileFields = {
    "t_click_rel",  "t_click_nonrel", "t_skip_rel",    "t_skip_nonrel",
    "t_read_rel",   "p_click_rel",    "p_skip_nonrel", "height_rows"};

double* profile_slot(CardProfile& p, std::string_view key) {
  if (key == "t_click_rel") return &p.t_click_rel;
  if (key == "t_click_nonrel") return &p.t_click_nonrel;
  if (key == "t_skip_rel") return &p.t_skip_rel;
  if (key == "t_skip_nonrel") return &p.t_skip_nonrel;
  if (key == "t_read_rel") return &p.t_read_rel;
  if (key == "p_click_rel") return &p.p_click_rel;
  if (key == "p_skip_nonrel") return &p.p_skip_nonrel;
  return nullptr;
}

}  // namespace

ProfileSet parse_profiles(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  ProfileSet profiles;
  std::optional<CardProfile> current;
  std::set<std::string> current_keys;
  int section_line = 0;

  auto finish = [&]() {
    if (!current) return;
    for (auto field : kProfileFields) {
      if (!current_keys.contains(std::string(field))) {
        throw DataError(std::string(source) + ":" + std::to_string(section_line) +
                        ": [" + std::string(to_string(current->card_type)) +
                        "] missing field " + std::string(field));
      }
    }
    try {
      profiles[current->card_type] = validate_profile(*current);
    } catch (const DataError& e) {
      throw DataError(std::string(source) + ":" + std::to_string(section_line) +
                      ": [" + std::string(to_string(current->card_type)) +
                      "] " + e.what());
    }
    current.reset();
    current_keys.clear();
  };

  std::string line;
  while (reader.next(line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.front() == '[') {
      if (body.back() != ']') reader.fail("malformed section header");
      finish();
      const auto name = trim(body.substr(1, body.size() - 2));
      CardType type;
      try {
        type = parse_card_type(name);
      } catch (const DataError& e) {
        reader.fail(e.what());
      }
      if (profiles.contains(type)) {
        reader.fail("duplicate section [" + std::string(name) + "]");
      }
      current = CardProfile{};
      current->card_type = type;
      section_line = reader.line_no();
      continue;
    }
    const auto kv = parse_key_value(line, reader);
    if (!kv) continue;
    if (!current) reader.fail("field '" + kv->key + "' outside a [card] section");
    if (!current_keys.insert(kv->key).second) {
      reader.fail("duplicate field " + kv->key);
    }
    if (kv->key == "height_rows") {
      const auto h = parse_int(kv->value);
      if (!h) reader.fail("height_rows must be an integer");
      current->height_rows = *h;
    } else if (double* slot = profile_slot(*current, kv->key)) {
      const auto v = parse_double(kv->value);
      if (!v) reader.fail("unparseable value for " + kv->key);
      *slot = *v;
    } else {
      reader.fail("unknown field " + kv->key);
    }
  }
  finish();
  return profiles;
}

ProfileSet parse_profiles_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_profiles(in, path.string());
}

void write_profiles(std::ostream& out, const ProfileSet& profiles) {
  bool first = true;
  for (const auto& [type, p] : profiles) {
    if (!first) out << '\n';
    first = false;
    out << '[' << to_string(type) << "]\n"
        << "t_click_rel = " << format_double(p.t_click_rel) << '\n'
        << "t_click_nonrel = " << format_double(p.t_click_nonrel) << '\n'
        << "t_skip_rel = " << format_double(p.t_skip_rel) << '\n'
        << "t_skip_nonrel = " << format_double(p.t_skip_nonrel) << '\n'
        << "t_read_rel = " << format_double(p.t_read_rel) << '\n'
        << "p_click_rel = " << format_double(p.p_click_rel) << '\n'
        << "p_skip_nonrel = " << format_double(p.p_skip_nonrel) << '\n'
        << "height_rows = " << p.height_rows << '\n';
  }
}

// -------------------------------------------------------- calibration model

CalibrationModel parse_model(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  CalibrationModel model;
  std::set<std::string> seen;
  std::string line;
  while (reader.next(line)) {
    const auto kv = parse_key_value(line, reader);
    if (!kv) continue;
    double* slot = nullptr;
    if (kv->key == "score_mean") slot = &model.score_mean;
    else if (kv->key == "score_std") slot = &model.score_std;
    else if (kv->key == "slope") slot = &model.slope;
    else if (kv->key == "intercept") slot = &model.intercept;
    else if (kv->key == "r_squared") slot = &model.r_squared;
    else reader.fail("unknown field " + kv->key);
    if (!seen.insert(kv->key).second) reader.fail("duplicate field " + kv->key);
    const auto v = parse_double(kv->value);
    if (!v) reader.fail("unparseable value for " + kv->key);
    *slot = *v;
  }
  for (const char* key : {"score_mean", "score_std", "slope", "intercept", "r_squared"}) {
    if (!seen.contains(key)) {
      throw DataError(std::string(source) + ": missing field " + key);
    }
  }
  try {
    return validate_model(model);
  } catch (const DataError& e) {
    throw DataError(std::string(source) + ": " + e.what());
  }
}

CalibrationModel parse_model_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_model(in, path.string());
}

void write_model(std::ostream& out, const CalibrationModel& m) {
  out << "score_mean = " << format_double(m.score_mean) << '\n'
      << "score_std = " << format_double(m.score_std) << '\n'
      << "slope = " << format_double(m.slope) << '\n'
      << "intercept = " << format_double(m.intercept) << '\n'
      << "r_squared = " << format_double(m.r_squared) << '\n';
}

// ------------------------------------------------------------ corpus/topics

std::vector<Document> parse_corpus(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<Document> docs;
  std::string line;
  while (reader.next(line)) {
    if (is_blank(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) reader.fail("expected 'id<TAB>text'");
    const auto id = trim(std::string_view(line).substr(0, tab));
    if (id.empty()) reader.fail("empty id");
    docs.push_back({std::string(id), line.substr(tab + 1)});
  }
  return docs;
}

std::vector<Document> parse_corpus_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_corpus(in, path.string());
}

std::vector<Query> parse_topics_file(const std::filesystem::path& path) {
  std::vector<Query> queries;
  std::set<std::string> seen;
  for (auto& d : parse_corpus_file(path)) {
    if (!seen.insert(d.doc_id).second) {
      throw DataError(path.string() + ": duplicate topic id " + d.doc_id);
    }
    queries.push_back({std::move(d.doc_id), std::move(d.text)});
  }
  return queries;
}

// -------------------------------------------------------------------- index

namespace {
constexpr std::string_view kIndexMagic = "iprp-index 1";
}

void write_index(std::ostream& out, const Index& index) {
  out << kIndexMagic << '\n';
  out << "docs\t" << index.doc_count() << '\n';
  for (const auto& [id, len] : index.doc_lengths()) out << id << '\t' << len << '\n';
  out << "terms\t" << index.postings().size() << '\n';
  for (const auto& [term, list] : index.postings()) {
    out << term;
    for (const auto& p : list) out << '\t' << p.doc_id << '\t' << p.tf;
    out << '\n';
  }
}

Index parse_index(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.next(line) || line != kIndexMagic) reader.fail("not an index file");

  auto read_count = [&](std::string_view label) {
    if (!reader.next(line)) reader.fail("unexpected end of file");
    const auto f = split_on(line, '\t');
    if (f.size() != 2 || f[0] != label) reader.fail("expected '" + std::string(label) + "' count");
    const auto n = parse_int(f[1]);
    if (!n || *n < 0) reader.fail("bad count");
    return *n;
  };

  Index::DocLengths lengths;
  const int docs = read_count("docs");
  for (int i = 0; i < docs; ++i) {
    if (!reader.next(line)) reader.fail("unexpected end of file");
    const auto f = split_on(line, '\t');
    if (f.size() != 2) reader.fail("expected doc_id<TAB>length");
    const auto len = parse_int(f[1]);
    if (!len) reader.fail("bad document length");
    if (!lengths.emplace(std::string(f[0]), *len).second) reader.fail("duplicate doc_id");
  }
  Index::Postings postings;
  const int terms = read_count("terms");
  for (int i = 0; i < terms; ++i) {
    if (!reader.next(line)) reader.fail("unexpected end of file");
    const auto f = split_on(line, '\t');
    if (f.size() < 3 || f.size() % 2 == 0) reader.fail("malformed postings line");
    std::vector<Posting> list;
    for (std::size_t j = 1; j < f.size(); j += 2) {
      const auto tf = parse_int(f[j + 1]);
      if (!tf) reader.fail("bad term frequency");
      list.push_back({std::string(f[j]), *tf});
    }
    if (!postings.emplace(std::string(f[0]), std::move(list)).second) {
      reader.fail("duplicate term");
    }
  }
  try {
    return Index::from_parts(std::move(postings), std::move(lengths));
  } catch (const DataError& e) {
    throw DataError(std::string(source) + ": " + e.what());
  }
}

void save_index(const std::filesystem::path& dir, const Index& index) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  auto out = open_output(dir / "index.tsv");
  write_index(out, index);
}

Index load_index(const std::filesystem::path& dir) {
  const auto path = dir / "index.tsv";
  auto in = open_input(path);
  return parse_index(in, path.string());
}

}  // namespace iprp
