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

#ifndef IPRP_REPORT_HPP_
#define IPRP_REPORT_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iprp/simulation.hpp"

namespace iprp {

inline constexpr std::string_view kReportHeader =
    "combo,rbo_mean,rbo_std,dcg_mean,dcg_std,tbg_mean,tbg_std,cards_mean";

inline constexpr std::string_view kTrialsHeader =
    "topic_id,combo,trial_index,rbo,dcg_page,tbg_page,cards_on_page,rows_used";

// One row per combination; numbers in shortest round-trip form.
void write_report_csv(std::ostream& out, std::span<const ComboSummary> rows);
std::vector<ComboSummary> parse_report_csv(std::istream& in,
                                           std::string_view source = "<report>");
std::vector<ComboSummary> parse_report_csv_file(const std::filesystem::path& path);

void write_trials_csv(std::ostream& out, std::span<const TrialResult> trials);
std::vector<TrialResult> parse_trials_csv(std::istream& in,
                                          std::string_view source = "<trials>");
std::vector<TrialResult> parse_trials_csv_file(const std::filesystem::path& path);

// Mean ± std table with three decimals, optionally captioned with the RBO
// one-way ANOVA.
void write_report_markdown(std::ostream& out, std::span<const ComboSummary> rows,
                           const std::optional<AnovaResult>& rbo_anova = {});

}  // namespace iprp

#endif  // IPRP_REPORT_HPP_
