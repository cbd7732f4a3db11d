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

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "rtgcn/ieee118.hpp"
#include "rtgcn/scenarios.hpp"

namespace rtgcn {
namespace {

std::vector<Point> line_coords(int n) {
  std::vector<Point> c;
  for (int i = 0; i < n; ++i) c.push_back({static_cast<double>(i), 0.0});
  return c;
}

TEST(Removals, SmallGraphs) {
  Graph triangle = new_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(enumerate_removals(triangle).size(), 6u);
  Graph star = new_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  auto specs = enumerate_removals(star);
  EXPECT_EQ(specs.size(), 6u);
  EXPECT_EQ(std::count_if(specs.begin(), specs.end(), [](const auto& s) { return s.anchor == 0; }),
            3);
}

TEST(Removals, Ieee118EveryEdgeTwice) {
  PowerNetwork net = ieee118_network();
  auto specs = enumerate_removals(net.graph);
  EXPECT_EQ(specs.size(), 358u);
  std::map<Edge, int> seen;
  std::set<std::string> ids;
  for (const auto& s : specs) {
    EXPECT_TRUE(s.anchor == s.edge.u || s.anchor == s.edge.v);
    EXPECT_TRUE(net.graph.has_edge(s.edge.u, s.edge.v));
    ++seen[s.edge];
    ids.insert(s.id);
  }
  EXPECT_EQ(seen.size(), 179u);
  for (const auto& [e, count] : seen) EXPECT_EQ(count, 2);
  EXPECT_EQ(ids.size(), 358u);
}

TEST(Additions, HandCounts) {
  Graph g = new_graph(3, {{0, 1}});
  auto specs = enumerate_additions(g, line_coords(3), 1.5);
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[0].edge, Edge(1, 2));
  EXPECT_EQ(specs[0].anchor, 1);
  EXPECT_EQ(specs[1].anchor, 2);
  EXPECT_TRUE(enumerate_additions(g, line_coords(3), 0.5).empty());
  EXPECT_THROW(enumerate_additions(g, line_coords(3), 0.0), InputError);
  EXPECT_THROW(enumerate_additions(g, line_coords(2), 1.0), InputError);
}

TEST(Additions, MonotoneInRadius) {
  PowerNetwork net = ieee118_network();
  std::size_t previous = 0;
  for (double r = 10.0; r <= 200.0; r += 10.0) {
    const std::size_t count = enumerate_additions(net.graph, net.coordinates, r).size();
    EXPECT_GE(count, previous);
    previous = count;
  }
}

TEST(CalibrateRadius, Ieee118Reproduces406) {
  PowerNetwork net = ieee118_network();
  RadiusCalibration cal = calibrate_radius(net.graph, net.coordinates, 406);
  EXPECT_EQ(cal.achieved, 406u);
  auto specs = enumerate_additions(net.graph, net.coordinates, cal.radius);
  EXPECT_EQ(specs.size(), 406u);
  for (const auto& s : specs) {
    EXPECT_FALSE(net.graph.has_edge(s.edge.u, s.edge.v));
    EXPECT_TRUE(s.anchor == s.edge.u || s.anchor == s.edge.v);
  }
  // Smallest such radius: anything slightly smaller loses specs.
  EXPECT_LT(enumerate_additions(net.graph, net.coordinates, std::nextafter(cal.radius, 0.0)).size(),
            406u);
}

TEST(CalibrateRadius, Extremes) {
  Graph g = new_graph(4, {{0, 1}});
  auto coords = line_coords(4);
  RadiusCalibration none = calibrate_radius(g, coords, 0);
  EXPECT_EQ(none.achieved, 0u);
  EXPECT_TRUE(enumerate_additions(g, coords, none.radius).empty());
  // 5 non-edge pairs, 10 per-anchor specs.
  RadiusCalibration all = calibrate_radius(g, coords, 10);
  EXPECT_EQ(all.achieved, 10u);
  EXPECT_GE(all.radius, 3.0);
  EXPECT_THROW(calibrate_radius(g, coords, 11), InputError);
}

TEST(ApplyScenario, EdgeCountsAndInverse) {
  PowerNetwork net = ieee118_network();
  const Graph original = net.graph;
  ScenarioSpec rm = enumerate_removals(net.graph)[5];
  Graph removed = apply_scenario(net.graph, rm);
  EXPECT_EQ(removed.num_edges(), 178u);
  EXPECT_EQ(net.graph, original);
  Matrix diff = (removed.adjacency() - original.adjacency()).cwiseAbs();
  EXPECT_EQ(diff.sum(), 2.0);
  ScenarioSpec back = make_scenario(ScenarioKind::kAddition, rm.anchor,
                                    rm.anchor == rm.edge.u ? rm.edge.v : rm.edge.u);
  EXPECT_EQ(apply_scenario(removed, back), original);
  ScenarioSpec add = enumerate_additions(net.graph, net.coordinates, 80.0).front();
  EXPECT_EQ(apply_scenario(net.graph, add).num_edges(), 180u);
}

TEST(ApplyScenario, InconsistentSpecs) {
  Graph g = new_graph(3, {{0, 1}});
  EXPECT_THROW(apply_scenario(g, make_scenario(ScenarioKind::kRemoval, 1, 2)), InputError);
  EXPECT_THROW(apply_scenario(g, make_scenario(ScenarioKind::kAddition, 0, 1)), InputError);
  ScenarioSpec bad = make_scenario(ScenarioKind::kAddition, 1, 2);
  bad.anchor = 0;
  EXPECT_THROW(apply_scenario(g, bad), InputError);
  EXPECT_THROW(apply_scenario(g, make_scenario(ScenarioKind::kAddition, 1, 5)), InputError);
}

TEST(ApplyScenario, DisconnectingRemovalFlagged) {
  Graph path = new_graph(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(disconnects(path, make_scenario(ScenarioKind::kRemoval, 0, 1)));
  Graph cycle = new_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_FALSE(disconnects(cycle, make_scenario(ScenarioKind::kRemoval, 0, 1)));
  PowerNetwork net = ieee118_network();
  int cut = 0;
  for (const auto& s : enumerate_removals(net.graph)) cut += disconnects(net.graph, s);
  EXPECT_GT(cut, 0);  // radial buses exist in IEEE-118
}

TEST(Manifest, RoundTripAndSubsample) {
  PowerNetwork net = ieee118_network();
  auto specs = enumerate_removals(net.graph);
  auto adds = enumerate_additions(net.graph, net.coordinates, 60.0);
  specs.insert(specs.end(), adds.begin(), adds.end());
  std::filesystem::create_directories(RTGCN_TEST_TMP);
  auto path = std::filesystem::path(RTGCN_TEST_TMP) / "scenarios.txt";
  write_scenario_manifest(path, specs);
  EXPECT_EQ(read_scenario_manifest(path), specs);
  auto sub = subsample(enumerate_removals(net.graph), 4);
  EXPECT_EQ(sub.size(), 90u);
  EXPECT_EQ(sub[1], enumerate_removals(net.graph)[4]);
}

TEST(ScenarioKind, Labels) {
  EXPECT_EQ(short_label(ScenarioKind::kRemoval), "LR");
  EXPECT_EQ(short_label(ScenarioKind::kAddition), "LA");
  EXPECT_EQ(parse_scenario_kind("LA"), ScenarioKind::kAddition);
  EXPECT_EQ(parse_scenario_kind("removal"), ScenarioKind::kRemoval);
  EXPECT_THROW(parse_scenario_kind("swap"), InputError);
  EXPECT_EQ(make_scenario(ScenarioKind::kRemoval, 7, 3).id, "LR-7-3-7");
}

}  // namespace
}  // namespace rtgcn
