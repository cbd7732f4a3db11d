// Copyright 2026 The Resilient TGCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RTGCN_REPORT_HPP_
#define RTGCN_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rtgcn/scenarios.hpp"

namespace rtgcn {

// Scenario column value for the accurate-topology reference rows.
inline constexpr const char* kTrueScenario = "true";
// kg_method column value for models that do not use a knowledge graph.
inline constexpr const char* kNoKg = "none";

struct ReportRow {
  std::string variant;
  std::string kg_method = kNoKg;
  std::string scenario = kTrueScenario;
  std::string kind = kTrueScenario;  // "removal", "addition" or "true"
  int anchor = -1;
  double rmse = 0.0;  // de-normalized; NaN when the row diverged
  int epochs = 0;
  double wall_seconds = 0.0;
  bool disconnected = false;
  std::uint64_t seed = 0;
  std::string status = "ok";  // "ok" or "diverged"

  // variant|kg_method|scenario, unique within a report.
  std::string id() const;
  bool ok() const { return status == "ok"; }
};

std::string report_header();
std::string format_report_row(const ReportRow& row);
ReportRow parse_report_row(const std::string& line);

// Lines that fail to parse (e.g. a truncated last line after a crash) are
// skipped with a warning.
std::vector<ReportRow> read_report(const std::filesystem::path& path);
void write_report(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

struct NodeAverage {
  std::string variant;
  std::string kg_method;
  std::string kind;
  int anchor = 0;
  double mean_rmse = 0.0;
  int count = 0;
};

struct OverallCell {
  std::string variant;
  std::string kg_method;
  std::string kind;
  double mean_rmse = 0.0;
  int count = 0;
};

// Each resilient row is paired with the baseline row for the same scenario.
// A tie counts as half a win.
struct WinRate {
  std::string variant;
  std::string kg_method;
  std::string kind;
  double win_rate = 0.0;
  int compared = 0;
  double mean_rmse = 0.0;
  double baseline_mean_rmse = 0.0;
};

struct ReportSummary {
  std::vector<NodeAverage> per_node;
  std::vector<OverallCell> overall;
  std::vector<WinRate> win_rates;
  std::vector<OverallCell> reference;  // true-topology rows
};

ReportSummary summarize(const std::vector<ReportRow>& rows);

const OverallCell* find_overall(const ReportSummary& s, const std::string& variant,
                                const std::string& kg_method, const std::string& kind);
const WinRate* find_win_rate(const ReportSummary& s, const std::string& variant,
                             const std::string& kg_method, const std::string& kind);

// Writes per_node.tsv, overall.tsv, win_rate.tsv and reference.tsv into
// `dir` and returns a human-readable summary.
std::string write_summary(const ReportSummary& s, const std::filesystem::path& dir,
                          bool per_node);
std::string format_summary(const ReportSummary& s);

}  // namespace rtgcn

#endif  // RTGCN_REPORT_HPP_
