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

#ifndef RTGCN_SCENARIOS_HPP_
#define RTGCN_SCENARIOS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "rtgcn/datagen.hpp"
#include "rtgcn/graph.hpp"

namespace rtgcn {

enum class ScenarioKind { kRemoval, kAddition };

std::string to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& text);
// "LR" / "LA".
std::string short_label(ScenarioKind kind);

// One single-link topology error, seen from `anchor` (an endpoint of `edge`).
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kRemoval;
  Edge edge;
  int anchor = 0;
  std::string id;

  bool operator==(const ScenarioSpec&) const = default;
};

ScenarioSpec make_scenario(ScenarioKind kind, int anchor, int other);

// One spec per (node, incident edge): 2M specs, node-major order.
std::vector<ScenarioSpec> enumerate_removals(const Graph& g);

// For each node i, one spec per non-adjacent j != i with
// distance(i, j) <= radius, anchored at i.
std::vector<ScenarioSpec> enumerate_additions(const Graph& g, const std::vector<Point>& coords,
                                              double radius);

// Returns a copy of `g` with the scenario's edge removed or added.
// Throws InputError when the spec is inconsistent with `g`.
Graph apply_scenario(const Graph& g, const ScenarioSpec& s);

// True when applying `s` leaves the graph disconnected.
bool disconnects(const Graph& g, const ScenarioSpec& s);

struct RadiusCalibration {
  double radius = 0.0;
  std::size_t achieved = 0;
};

// Smallest radius whose addition count reaches `target_count`.
RadiusCalibration calibrate_radius(const Graph& g, const std::vector<Point>& coords,
                                   std::size_t target_count);

// Manifest: one "kind anchor i j id" line per spec, '#' comments.
void write_scenario_manifest(const std::filesystem::path& path,
                             const std::vector<ScenarioSpec>& specs);
std::vector<ScenarioSpec> read_scenario_manifest(const std::filesystem::path& path);

// Keeps every `stride`-th spec, starting with the first.
std::vector<ScenarioSpec> subsample(const std::vector<ScenarioSpec>& specs, int stride);

}  // namespace rtgcn

#endif  // RTGCN_SCENARIOS_HPP_
