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

#include "rtgcn/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "rtgcn/util.hpp"

namespace rtgcn {
namespace {

constexpr const char* kColumns[] = {"variant", "kg_method",    "scenario", "kind",
                                    "anchor",  "rmse",         "epochs",   "wall_seconds",
                                    "disconnected", "seed",    "status"};
constexpr std::size_t kNumColumns = std::size(kColumns);

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("report: bad number '" + s + "'");
  }
  return v;
}

template <typename T>
T parse_int(const std::string& s) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("report: bad integer '" + s + "'");
  }
  return v;
}

using Key = std::tuple<std::string, std::string, std::string>;

struct Accum {
  double sum = 0.0;
  int count = 0;
};

std::string tsv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += '\t';
    out += cells[i];
  }
  return out + '\n';
}

std::string pct(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(1);
  s << 100.0 * v << '%';
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.setf(std::ios::scientific);
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace

std::string ReportRow::id() const { return variant + "|" + kg_method + "|" + scenario; }

std::string report_header() {
  std::string h =
      "# resilient-tgcn sweep report, tab-separated, one row per (variant, kg_method, "
      "scenario)\n"
      "# variant: baseline | kgim | pkgim-slp | pkgim-mlp | pkgim-attn\n"
      "# kg_method: cosine | pearson | gat, or none for the baseline\n"
      "# scenario: LR/LA-anchor-u-v, or true for the accurate-topology reference\n"
      "# kind: removal | addition | true; anchor: 0-based node the scenario is counted under\n"
      "# rmse: test RMSE in radians (de-normalized); nan when status is diverged\n"
      "# epochs: training epochs run (0 when the model was shared across scenarios)\n"
      "# wall_seconds: wall time spent on this row; disconnected: 1 if the input "
      "topology is not connected\n"
      "# seed: seed used to initialize and train the model of this row\n";
  std::vector<std::string> cols(std::begin(kColumns), std::end(kColumns));
  return h + tsv_line(cols);
}

std::string format_report_row(const ReportRow& r) {
  return tsv_line({r.variant, r.kg_method, r.scenario, r.kind, std::to_string(r.anchor),
                   format_double(r.rmse), std::to_string(r.epochs), format_double(r.wall_seconds),
                   r.disconnected ? "1" : "0", std::to_string(r.seed), r.status});
}

ReportRow parse_report_row(const std::string& line) {
  auto f = split_ws(line);
  if (f.size() != kNumColumns) {
    throw InputError("report: expected " + std::to_string(kNumColumns) + " fields, got " +
                     std::to_string(f.size()));
  }
  ReportRow r;
  r.variant = f[0];
  r.kg_method = f[1];
  r.scenario = f[2];
  r.kind = f[3];
  r.anchor = parse_int<int>(f[4]);
  r.rmse = parse_double(f[5]);
  r.epochs = parse_int<int>(f[6]);
  r.wall_seconds = parse_double(f[7]);
  if (f[8] != "0" && f[8] != "1") throw InputError("report: bad disconnected flag '" + f[8] + "'");
  r.disconnected = f[8] == "1";
  r.seed = parse_int<std::uint64_t>(f[9]);
  r.status = f[10];
  if (r.status != "ok" && r.status != "diverged") {
    throw InputError("report: bad status '" + r.status + "'");
  }
  if (r.ok() && !(r.rmse >= 0.0)) throw InputError("report: negative or missing rmse");
  return r;
}

std::vector<ReportRow> read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open report " + path.string());
  std::vector<ReportRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#' || t.starts_with("variant\t")) continue;
    try {
      rows.push_back(parse_report_row(line));
    } catch (const InputError& e) {
      log_warning(path.string() + ":" + std::to_string(lineno) + ": skipping row (" + e.what() +
                  ")");
    }
  }
  return rows;
}

void write_report(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write report " + path.string());
  out << report_header();
  for (const auto& r : rows) out << format_report_row(r);
  if (!out) throw InputError("write failed for " + path.string());
}

ReportSummary summarize(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw InputError("empty report");
  std::map<std::tuple<std::string, std::string, std::string, int>, Accum> node;
  std::map<Key, Accum> overall, reference;
  std::map<Key, std::tuple<double, int, double, double>> wins;  // wins, n, sum, base sum
  std::map<std::string, double> baseline_by_scenario;
  for (const auto& r : rows) {
    if (r.ok() && r.variant == "baseline") baseline_by_scenario[r.scenario] = r.rmse;
  }
  int usable = 0;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    ++usable;
    Key key{r.variant, r.kg_method, r.kind};
    if (r.kind == kTrueScenario) {
      auto& a = reference[key];
      a.sum += r.rmse;
      ++a.count;
      continue;
    }
    auto& a = overall[key];
    a.sum += r.rmse;
    ++a.count;
    auto& n = node[{r.variant, r.kg_method, r.kind, r.anchor}];
    n.sum += r.rmse;
    ++n.count;
    if (r.variant == "baseline") continue;
    auto b = baseline_by_scenario.find(r.scenario);
    if (b == baseline_by_scenario.end()) continue;
    auto& w = wins[key];
    std::get<0>(w) += r.rmse < b->second ? 1.0 : (r.rmse == b->second ? 0.5 : 0.0);
    std::get<1>(w) += 1;
    std::get<2>(w) += r.rmse;
    std::get<3>(w) += b->second;
  }
  if (usable == 0) throw InputError("report has no successful rows");

  ReportSummary s;
  for (const auto& [k, a] : node) {
    s.per_node.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k),
                          a.sum / a.count, a.count});
  }
  for (const auto& [k, a] : overall) {
    s.overall.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), a.sum / a.count, a.count});
  }
  for (const auto& [k, a] : reference) {
    s.reference.push_back(
        {std::get<0>(k), std::get<1>(k), std::get<2>(k), a.sum / a.count, a.count});
  }
  for (const auto& [k, w] : wins) {
    const int n = std::get<1>(w);
    s.win_rates.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<0>(w) / n, n,
                           std::get<2>(w) / n, std::get<3>(w) / n});
  }
  return s;
}

const OverallCell* find_overall(const ReportSummary& s, const std::string& variant,
                                const std::string& kg_method, const std::string& kind) {
  for (const auto& c : kind == kTrueScenario ? s.reference : s.overall) {
    if (c.variant == variant && c.kg_method == kg_method && c.kind == kind) return &c;
  }
  return nullptr;
}

const WinRate* find_win_rate(const ReportSummary& s, const std::string& variant,
                             const std::string& kg_method, const std::string& kind) {
  for (const auto& w : s.win_rates) {
    if (w.variant == variant && w.kg_method == kg_method && w.kind == kind) return &w;
  }
  return nullptr;
}

std::string write_summary(const ReportSummary& s, const std::filesystem::path& dir,
                          bool per_node) {
  std::filesystem::create_directories(dir);
  auto open = [&dir](const char* name, const char* doc) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw InputError("cannot write " + (dir / name).string());
    out << doc;
    return out;
  };
  if (per_node) {
    auto out = open("per_node.tsv",
                    "# mean test RMSE over the scenarios anchored at each node\n"
                    "variant\tkg_method\tkind\tnode\tmean_rmse\tscenarios\n");
    for (const auto& n : s.per_node) {
      out << tsv_line({n.variant, n.kg_method, n.kind, std::to_string(n.anchor),
                       format_double(n.mean_rmse), std::to_string(n.count)});
    }
  }
  {
    auto out = open("overall.tsv",
                    "# mean test RMSE over all scenarios of a kind (LR = removal, LA = "
                    "addition)\n"
                    "variant\tkg_method\tkind\tmean_rmse\tscenarios\n");
    for (const auto& c : s.overall) {
      out << tsv_line({c.variant, c.kg_method, short_label(parse_scenario_kind(c.kind)),
                       format_double(c.mean_rmse), std::to_string(c.count)});
    }
  }
  {
    auto out = open("win_rate.tsv",
                    "# fraction of shared scenarios where the variant's RMSE is below the "
                    "baseline's; ties count 0.5\n"
                    "variant\tkg_method\tkind\twin_rate\tscenarios\tmean_rmse\tbaseline_mean_rmse\n");
    for (const auto& w : s.win_rates) {
      out << tsv_line({w.variant, w.kg_method, short_label(parse_scenario_kind(w.kind)),
                       format_double(w.win_rate), std::to_string(w.compared),
                       format_double(w.mean_rmse), format_double(w.baseline_mean_rmse)});
    }
  }
  {
    auto out = open("reference.tsv",
                    "# test RMSE with the accurate topology\n"
                    "variant\tkg_method\tmean_rmse\trows\n");
    for (const auto& c : s.reference) {
      out << tsv_line({c.variant, c.kg_method, format_double(c.mean_rmse), std::to_string(c.count)});
    }
  }
  return format_summary(s);
}

std::string format_summary(const ReportSummary& s) {
  std::ostringstream out;
  if (!s.reference.empty()) {
    out << "true topology\n";
    for (const auto& c : s.reference) {
      out << "  " << c.variant << " (" << c.kg_method << ")  rmse " << sci(c.mean_rmse) << "\n";
    }
  }
  for (const char* kind : {"removal", "addition"}) {
    bool header = false;
    for (const auto& c : s.overall) {
      if (c.kind != kind) continue;
      if (!header) {
        out << short_label(parse_scenario_kind(kind)) << " (" << kind << ")\n";
        header = true;
      }
      out << "  " << c.variant << " (" << c.kg_method << ")  rmse " << sci(c.mean_rmse) << "  n "
          << c.count;
      if (const WinRate* w = find_win_rate(s, c.variant, c.kg_method, c.kind)) {
        out << "  win " << pct(w->win_rate);
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace rtgcn
