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

#include "iprp/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

namespace iprp {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void fail(std::string_view source, int line, const std::string& msg) {
  throw DataError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

template <typename Row, typename ParseRow>
std::vector<Row> parse_csv(std::istream& in, std::string_view source,
                           std::string_view header, ParseRow parse_row) {
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next()) fail(source, 1, "missing header");
  if (line != header) fail(source, line_no, "expected header '" + std::string(header) + "'");
  while (next()) {
    if (line.empty()) continue;
    const auto f = split_commas(line);
    try {
      rows.push_back(parse_row(f));
    } catch (const DataError& e) {
      fail(source, line_no, e.what());
    }
  }
  return rows;
}

double number(std::string_view field) {
  const auto v = parse_double(field);
  if (!v) throw DataError("unparseable number '" + std::string(field) + "'");
  return *v;
}

int integer(std::string_view field) {
  const auto v = parse_int(field);
  if (!v) throw DataError("unparseable integer '" + std::string(field) + "'");
  return *v;
}

std::string pm(Summary s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f ± %.3f", s.mean, s.std);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const ComboSummary> rows) {
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << combo_name(r.combo) << ',' << format_double(r.rbo.mean) << ','
        << format_double(r.rbo.std) << ',' << format_double(r.dcg.mean) << ','
        << format_double(r.dcg.std) << ',' << format_double(r.tbg.mean) << ','
        << format_double(r.tbg.std) << ',' << format_double(r.cards_mean) << '\n';
  }
}

std::vector<ComboSummary> parse_report_csv(std::istream& in,
                                           std::string_view source) {
  return parse_csv<ComboSummary>(in, source, kReportHeader, [](const auto& f) {
    if (f.size() != 8) {
      throw DataError("expected 8 fields, got " + std::to_string(f.size()));
    }
    ComboSummary r;
    r.combo = parse_combo(f[0]);
    r.rbo = {number(f[1]), number(f[2])};
    r.dcg = {number(f[3]), number(f[4])};
    r.tbg = {number(f[5]), number(f[6])};
    r.cards_mean = number(f[7]);
    return r;
  });
}

std::vector<ComboSummary> parse_report_csv_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_report_csv(in, path.string());
}

void write_trials_csv(std::ostream& out, std::span<const TrialResult> trials) {
  out << kTrialsHeader << '\n';
  for (const auto& t : trials) {
    out << t.topic_id << ',' << combo_name(t.combo) << ',' << t.trial_index << ','
        << format_double(t.rbo) << ',' << format_double(t.dcg_page) << ','
        << format_double(t.tbg_page) << ',' << t.cards_on_page << ','
        << t.rows_used << '\n';
  }
}

std::vector<TrialResult> parse_trials_csv(std::istream& in,
                                          std::string_view source) {
  return parse_csv<TrialResult>(in, source, kTrialsHeader, [](const auto& f) {
    if (f.size() != 8) {
      throw DataError("expected 8 fields, got " + std::to_string(f.size()));
    }
    TrialResult t;
    t.topic_id = std::string(f[0]);
    t.combo = parse_combo(f[1]);
    t.trial_index = integer(f[2]);
    t.rbo = number(f[3]);
    t.dcg_page = number(f[4]);
    t.tbg_page = number(f[5]);
    t.cards_on_page = integer(f[6]);
    t.rows_used = integer(f[7]);
    return t;
  });
}

std::vector<TrialResult> parse_trials_csv_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_trials_csv(in, path.string());
}

void write_report_markdown(std::ostream& out, std::span<const ComboSummary> rows,
                           const std::optional<AnovaResult>& rbo_anova) {
  out << "| Combination Type | RBO | DCG of Page | TBG of Page | Cards on Page |\n"
      << "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    char cards[32];
    std::snprintf(cards, sizeof(cards), "%.2f", r.cards_mean);
    out << "| " << combo_label(r.combo) << " | " << pm(r.rbo) << " | "
        << pm(r.dcg) << " | " << pm(r.tbg) << " | " << cards << " |\n";
  }
  if (rbo_anova) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "\nOne-way ANOVA on RBO: F(%d,%d)=%.2f\n",
                  rbo_anova->df_between, rbo_anova->df_within, rbo_anova->f);
    out << buf;
  }
}

}  // namespace iprp
