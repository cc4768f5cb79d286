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

#include "iprp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>

#include "iprp/epu.hpp"
#include "iprp/estimation.hpp"
#include "iprp/formats.hpp"
#include "iprp/report.hpp"
#include "iprp/retrieval.hpp"
#include "iprp/simulation.hpp"

namespace iprp {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - start));
    if (comma == std::string_view::npos) return parts;
    start = comma + 1;
  }
}

// "TIS=6,T=2" overrides of the default heights.
HeightMap parse_heights(std::string_view text) {
  HeightMap heights = default_heights();
  if (text.empty()) return heights;
  for (auto part : split_list(text)) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("--heights expects CARD=ROWS pairs");
    }
    const auto rows = parse_int(part.substr(eq + 1));
    if (!rows || *rows < 1) throw UsageError("--heights: rows must be >= 1");
    heights[parse_card_type(part.substr(0, eq))] = *rows;
  }
  return heights;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

struct Options {
  // index
  std::string corpus, out_dir;
  // shared inputs
  std::string index_dir, topics, run, qrels, model, profiles, log, out;
  int k = kDefaultCandidates;
  double bm25_k1 = 1.2;
  double bm25_b = 0.75;
  std::string tag = "bm25";
  int depth = kCalibrationDepth;
  std::string heights;
  std::string cards = "TS";
  // simulate
  int rows = kDefaultRowBudget;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string combos = "all";
  double rbo_p = 0.9;
  double tbg_h = 224.0;
  std::string rbo_scope = "full";
  std::string trials_out;
  int threads = 0;
  bool serial = false;
  bool graded_dcg = false;
  // report
  std::string in, format = "markdown", trials_in;
};

int cmd_index(const Options& o, std::ostream& out) {
  const auto corpus = parse_corpus_file(o.corpus);
  const auto index = Index::build(corpus);
  save_index(o.out_dir, index);
  out << "indexed " << index.doc_count() << " documents, "
      << index.postings().size() << " terms into " << o.out_dir << '\n';
  return kExitOk;
}

int cmd_rank(const Options& o, std::ostream& out) {
  const auto index = load_index(o.index_dir);
  const auto queries = parse_topics_file(o.topics);
  const auto results = rank_queries(index, queries, o.k, {o.bm25_k1, o.bm25_b});
  std::vector<RunEntry> run;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    int rank = 1;
    for (const auto& doc : results[q]) {
      run.push_back({queries[q].topic_id, doc.doc_id, rank++, doc.score, o.tag});
    }
  }
  auto file = open_output(o.out);
  write_run(file, run);
  out << "wrote " << run.size() << " run entries for " << queries.size()
      << " topics to " << o.out << '\n';
  return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  const auto run = parse_run_file(o.run);
  const QrelTable qrels(parse_qrels_file(o.qrels));
  const auto pairs = calibration_pairs(run, qrels, o.depth);
  const auto model = fit_relevance_model(pairs);
  auto file = open_output(o.out);
  write_model(file, model);
  out << "fitted on " << pairs.size() << " pairs: slope=" << fixed(model.slope, 4)
      << " intercept=" << fixed(model.intercept, 4)
      << " r_squared=" << fixed(model.r_squared, 4) << '\n';
  return kExitOk;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const auto records = parse_annotation_log_file(o.log);
  const auto profiles = build_profiles(records, parse_heights(o.heights));
  auto file = open_output(o.out);
  write_profiles(file, profiles);
  out << "estimated " << profiles.size() << " profiles from " << records.size()
      << " annotations\n";
  return kExitOk;
}

int cmd_epu(const Options& o, std::ostream& out) {
  const auto run = parse_run_file(o.run);
  const auto model = parse_model_file(o.model);
  const auto profiles = parse_profiles_file(o.profiles);
  std::vector<CardType> cards;
  for (auto name : split_list(o.cards)) cards.push_back(parse_card_type(name));
  if (cards.empty()) throw UsageError("--cards needs at least one card type");

  out << "topic_id\trank\tdoc_id\tcard\tp_rel\tepu_card\n";
  for (const auto& topic : build_topics(run, model, nullptr, o.k)) {
    std::vector<Placement> placed = topic.baseline.entries();
    for (std::size_t i = 0; i < placed.size(); ++i) {
      placed[i].card = i < cards.size() ? cards[i] : kBaselineCard;
    }
    const RankedList list(std::move(placed));
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& p = list[i];
      const double epu = epu_card(require_profile(profiles, p.card), p.item.p_rel);
      out << topic.topic_id << '\t' << (i + 1) << '\t' << p.item.doc_id << '\t'
          << to_string(p.card) << '\t' << fixed(p.item.p_rel, 6) << '\t'
          << fixed(epu, 6) << '\n';
    }
    const auto page = layout_page(list, profiles, o.rows);
    std::string list_epu = "n/a";
    if (!page.shown.empty()) {
      std::vector<ListItem> items;
      for (const auto& p : page.shown) {
        items.push_back({p.item.p_rel, &require_profile(profiles, p.card)});
      }
      list_epu = fixed(epu_list(items), 6);
    }
    out << "# " << topic.topic_id << " page_cards=" << page.shown.size()
        << " page_rows=" << page.rows_used << " epu_list=" << list_epu << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.rbo_scope != "full" && o.rbo_scope != "page") {
    throw UsageError("--rbo-scope must be 'full' or 'page'");
  }
  const auto run = parse_run_file(o.run);
  const QrelTable qrels(parse_qrels_file(o.qrels));
  const auto model = parse_model_file(o.model);
  const auto profiles = parse_profiles_file(o.profiles);
  const auto combos = parse_combo_list(o.combos);
  const auto topics = build_topics(run, model, &qrels, o.k);

  ExperimentOptions options;
  options.trials_per_combo = o.trials;
  options.seed = o.seed;
  options.config.row_budget = o.rows;
  options.config.metrics.rbo_persistence = o.rbo_p;
  options.config.metrics.tbg_halflife = o.tbg_h;
  options.config.metrics.graded_dcg = o.graded_dcg;
  options.config.rbo_scope = o.rbo_scope == "page" ? RboScope::Page : RboScope::FullList;
  options.execution = o.serial ? Execution::Serial : Execution::Parallel;
  options.threads = o.threads;

  const auto report = run_experiment(topics, combos, profiles, options);
  {
    auto file = open_output(o.out);
    write_report_csv(file, report.rows);
  }
  if (!o.trials_out.empty()) {
    auto file = open_output(o.trials_out);
    write_trials_csv(file, report.trials);
  }
  out << "simulated " << report.trials.size() << " trials over " << topics.size()
      << " topics and " << combos.size() << " combinations; report in " << o.out
      << '\n';
  if (report.rbo_anova) {
    out << "RBO one-way ANOVA: F(" << report.rbo_anova->df_between << ','
        << report.rbo_anova->df_within << ")=" << fixed(report.rbo_anova->f, 2)
        << '\n';
  }
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  if (o.format != "markdown" && o.format != "csv") {
    throw UsageError("--format must be 'markdown' or 'csv'");
  }
  const auto rows = parse_report_csv_file(o.in);
  if (o.format == "csv") {
    write_report_csv(out, rows);
    return kExitOk;
  }
  std::optional<AnovaResult> anova;
  if (!o.trials_in.empty()) {
    std::vector<ComboType> combos;
    for (const auto& r : rows) combos.push_back(r.combo);
    anova = summarize_trials(parse_trials_csv_file(o.trials_in), combos).rbo_anova;
  }
  write_report_markdown(out, rows, anova);
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Card-model ranking of heterogeneous result pages", "iprp"};
  app.require_subcommand(1);
  Options o;

  auto* index = app.add_subcommand("index", "Build a BM25 index from a corpus");
  index->add_option("--corpus", o.corpus, "id<TAB>text corpus file")->required();
  index->add_option("--out", o.out_dir, "Index directory")->required();

  auto* rank = app.add_subcommand("rank", "Rank topics with BM25 into a run file");
  rank->add_option("--index", o.index_dir, "Index directory")->required();
  rank->add_option("--topics", o.topics, "id<TAB>query topic file")->required();
  rank->add_option("--k", o.k, "Results per topic")->capture_default_str();
  rank->add_option("--k1", o.bm25_k1, "BM25 k1")->capture_default_str();
  rank->add_option("--b", o.bm25_b, "BM25 length normalisation")->capture_default_str();
  rank->add_option("--tag", o.tag, "Run tag")->capture_default_str();
  rank->add_option("--out", o.out, "Output run file")->required();

  auto* calibrate = app.add_subcommand("calibrate", "Fit the score-to-relevance model");
  calibrate->add_option("--run", o.run, "TREC run file")->required();
  calibrate->add_option("--qrels", o.qrels, "TREC qrels file")->required();
  calibrate->add_option("--depth", o.depth, "Pool depth per topic")->capture_default_str();
  calibrate->add_option("--out", o.out, "Output model file")->required();

  auto* estimate = app.add_subcommand("estimate", "Estimate card profiles from annotations");
  estimate->add_option("--log", o.log, "Annotation CSV")->required();
  estimate->add_option("--heights", o.heights, "Height overrides, e.g. T=2,TIS=6");
  estimate->add_option("--out", o.out, "Output profile file")->required();

  auto* epu = app.add_subcommand("epu", "Print per-item expected perceived utility");
  epu->add_option("--run", o.run, "TREC run file")->required();
  epu->add_option("--model", o.model, "Calibration model")->required();
  epu->add_option("--profiles", o.profiles, "Card profiles")->required();
  epu->add_option("--cards", o.cards, "Card type per rank; later ranks use TS")
      ->capture_default_str();
  epu->add_option("--k", o.k, "Candidates per topic")->capture_default_str();
  epu->add_option("--rows", o.rows, "Row budget for the list utility")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Run the card-mix re-ranking experiment");
  simulate->add_option("--run", o.run, "TREC run file")->required();
  simulate->add_option("--qrels", o.qrels, "TREC qrels file")->required();
  simulate->add_option("--model", o.model, "Calibration model")->required();
  simulate->add_option("--profiles", o.profiles, "Card profiles")->required();
  simulate->add_option("--rows", o.rows, "Row budget per page")->capture_default_str();
  simulate->add_option("--trials", o.trials, "Trials per topic and combination")
      ->capture_default_str();
  simulate->add_option("--seed", o.seed, "Experiment seed")->capture_default_str();
  simulate->add_option("--combos", o.combos, "'all' or comma list, e.g. baseline,ts-or-t")
      ->capture_default_str();
  simulate->add_option("--rbo-p", o.rbo_p, "RBO persistence")->capture_default_str();
  simulate->add_option("--tbg-h", o.tbg_h, "TBG half-life in seconds")->capture_default_str();
  simulate->add_option("--rbo-scope", o.rbo_scope, "full or page")->capture_default_str();
  simulate->add_option("--k", o.k, "Candidates per topic")->capture_default_str();
  simulate->add_option("--threads", o.threads, "OpenMP threads (0 = default)");
  simulate->add_flag("--serial", o.serial, "Use the serial reference loop");
  simulate->add_flag("--graded-dcg", o.graded_dcg, "Use 2^rel-1 gains for DCG");
  simulate->add_option("--trials-out", o.trials_out, "Per-trial CSV output");
  simulate->add_option("--out", o.out, "Report CSV")->required();

  auto* report = app.add_subcommand("report", "Render a report CSV");
  report->add_option("--in", o.in, "Report CSV")->required();
  report->add_option("--format", o.format, "markdown or csv")->capture_default_str();
  report->add_option("--trials", o.trials_in, "Per-trial CSV for the ANOVA caption");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "iprp: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*index) return cmd_index(o, out);
    if (*rank) return cmd_rank(o, out);
    if (*calibrate) return cmd_calibrate(o, out);
    if (*estimate) return cmd_estimate(o, out);
    if (*epu) return cmd_epu(o, out);
    if (*simulate) return cmd_simulate(o, out);
    if (*report) return cmd_report(o, out);
  } catch (const UsageError& e) {
    err << "iprp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "iprp: " << e.what() << '\n';
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace iprp
