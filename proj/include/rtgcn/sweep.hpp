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

#ifndef RTGCN_SWEEP_HPP_
#define RTGCN_SWEEP_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <vector>

#include "rtgcn/datagen.hpp"
#include "rtgcn/knowledge_graph.hpp"
#include "rtgcn/report.hpp"
#include "rtgcn/scenarios.hpp"
#include "rtgcn/tgcn.hpp"
#include "rtgcn/trainer.hpp"

namespace rtgcn {

struct SweepInputs {
  TimeSeriesDataset data;
  Graph true_graph;
  std::map<KgMethod, Graph> knowledge;
};

struct SweepConfig {
  std::vector<Variant> variants = all_variants();
  std::vector<KgMethod> kg_methods = {KgMethod::kCosine, KgMethod::kPearson, KgMethod::kGat};
  std::vector<ScenarioSpec> scenarios;
  // Adds one baseline row evaluated on the accurate topology.
  bool include_reference = true;
  // Train once per (variant, kg) on the accurate topology and only swap the
  // input adjacency per scenario. Faster; not the per-scenario protocol.
  bool shared_training = false;
  int workers = 1;
  std::uint64_t master_seed = 0;
  TgcnConfig model;
  TrainConfig train;  // seed is replaced per row
  SplitRatios split;
  bool record_wall_time = true;
  // Rows are appended here as they finish; existing rows are reused.
  std::filesystem::path report_path;
  std::function<void(const ReportRow&, std::size_t done, std::size_t total)> on_row;

  void validate() const;
};

// Rows in canonical order without results.
std::vector<ReportRow> plan_sweep(const SweepConfig& config);

std::vector<ReportRow> run_sweep(const SweepInputs& inputs, const SweepConfig& config);

// Removals and/or additions, each subsampled unless `full`.
struct ScenarioSelection {
  bool removals = true;
  bool additions = true;
  bool full = false;
  int removal_stride = 4;
  int addition_stride = 8;
  double addition_radius = 0.0;
};

std::vector<ScenarioSpec> select_scenarios(const PowerNetwork& net,
                                           const ScenarioSelection& selection);

}  // namespace rtgcn

#endif  // RTGCN_SWEEP_HPP_
