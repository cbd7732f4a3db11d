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

#include "rtgcn/scenarios.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace rtgcn {

std::string to_string(ScenarioKind kind) {
  return kind == ScenarioKind::kRemoval ? "removal" : "addition";
}

std::string short_label(ScenarioKind kind) { return kind == ScenarioKind::kRemoval ? "LR" : "LA"; }

ScenarioKind parse_scenario_kind(const std::string& text) {
  if (text == "removal" || text == "LR") return ScenarioKind::kRemoval;
  if (text == "addition" || text == "LA") return ScenarioKind::kAddition;
  throw InputError("unknown scenario kind '" + text + "'");
}

ScenarioSpec make_scenario(ScenarioKind kind, int anchor, int other) {
  ScenarioSpec s;
  s.kind = kind;
  s.edge = Edge(anchor, other);
  s.anchor = anchor;
  s.id = short_label(kind) + "-" + std::to_string(anchor) + "-" + std::to_string(s.edge.u) +
         "-" + std::to_string(s.edge.v);
  return s;
}

std::vector<ScenarioSpec> enumerate_removals(const Graph& g) {
  std::vector<ScenarioSpec> out;
  out.reserve(2 * g.num_edges());
  for (int i = 0; i < g.num_nodes(); ++i) {
    for (int j : g.neighbors(i)) out.push_back(make_scenario(ScenarioKind::kRemoval, i, j));
  }
  return out;
}

std::vector<ScenarioSpec> enumerate_additions(const Graph& g, const std::vector<Point>& coords,
                                              double radius) {
  if (!(radius > 0.0)) throw InputError("enumerate_additions: radius must be > 0");
  if (coords.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw InputError("enumerate_additions: need coordinates for every node");
  }
  std::vector<ScenarioSpec> out;
  for (int i = 0; i < g.num_nodes(); ++i) {
    for (int j = 0; j < g.num_nodes(); ++j) {
      if (j == i || g.has_edge(i, j)) continue;
      if (distance(coords[i], coords[j]) <= radius) {
        out.push_back(make_scenario(ScenarioKind::kAddition, i, j));
      }
    }
  }
  return out;
}

namespace {

void check_spec(const Graph& g, const ScenarioSpec& s) {
  if (s.edge.u < 0 || s.edge.v >= g.num_nodes() || s.edge.u == s.edge.v) {
    throw InputError("scenario " + s.id + ": edge out of range");
  }
  if (s.anchor != s.edge.u && s.anchor != s.edge.v) {
    throw InputError("scenario " + s.id + ": anchor is not an endpoint");
  }
  const bool present = g.has_edge(s.edge.u, s.edge.v);
  if (s.kind == ScenarioKind::kRemoval && !present) {
    throw InputError("scenario " + s.id + ": removal edge not in graph");
  }
  if (s.kind == ScenarioKind::kAddition && present) {
    throw InputError("scenario " + s.id + ": addition edge already in graph");
  }
}

}  // namespace

Graph apply_scenario(const Graph& g, const ScenarioSpec& s) {
  check_spec(g, s);
  std::vector<Edge> edges = g.edges();
  if (s.kind == ScenarioKind::kRemoval) {
    edges.erase(std::find(edges.begin(), edges.end(), s.edge));
  } else {
    edges.push_back(s.edge);
  }
  return graph_from_edges(g.num_nodes(), std::move(edges));
}

bool disconnects(const Graph& g, const ScenarioSpec& s) {
  return g.is_connected() && !apply_scenario(g, s).is_connected();
}

RadiusCalibration calibrate_radius(const Graph& g, const std::vector<Point>& coords,
                                   std::size_t target_count) {
  if (coords.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw InputError("calibrate_radius: need coordinates for every node");
  }
  std::vector<double> dist;
  for (int i = 0; i < g.num_nodes(); ++i)
    for (int j = i + 1; j < g.num_nodes(); ++j)
      if (!g.has_edge(i, j)) dist.push_back(distance(coords[i], coords[j]));
  std::sort(dist.begin(), dist.end());
  // Each unordered candidate yields one spec per endpoint.
  if (target_count > 2 * dist.size()) {
    throw InputError("calibrate_radius: target " + std::to_string(target_count) +
                     " exceeds the " + std::to_string(2 * dist.size()) + " possible additions");
  }
  RadiusCalibration out;
  if (target_count == 0) {
    out.radius = dist.empty() ? 1.0 : dist.front() / 2.0;
    if (!(out.radius > 0.0)) out.radius = std::numeric_limits<double>::min();
    out.achieved = 0;
    return out;
  }
  // Smallest k with 2 * #{d <= dist[k-1]} >= target; ties are absorbed by
  // counting through upper_bound.
  const std::size_t needed_pairs = (target_count + 1) / 2;
  out.radius = dist[needed_pairs - 1];
  if (!(out.radius > 0.0)) out.radius = std::numeric_limits<double>::min();
  auto upto = std::upper_bound(dist.begin(), dist.end(), out.radius);
  out.achieved = 2 * static_cast<std::size_t>(upto - dist.begin());
  return out;
}

void write_scenario_manifest(const std::filesystem::path& path,
                             const std::vector<ScenarioSpec>& specs) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write scenario manifest " + path.string());
  out << "# kind anchor i j id\n";
  for (const auto& s : specs) {
    out << to_string(s.kind) << " " << s.anchor << " " << s.edge.u << " " << s.edge.v << " "
        << s.id << "\n";
  }
}

std::vector<ScenarioSpec> read_scenario_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario manifest " + path.string());
  std::vector<ScenarioSpec> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto tok = split_ws(view);
    if (tok.size() != 5) {
      throw InputError("scenario manifest line " + std::to_string(line_no) +
                       ": expected 'kind anchor i j id'");
    }
    ScenarioSpec s;
    try {
      s.kind = parse_scenario_kind(tok[0]);
      s.anchor = std::stoi(tok[1]);
      s.edge = Edge(std::stoi(tok[2]), std::stoi(tok[3]));
    } catch (const std::logic_error&) {
      throw InputError("scenario manifest line " + std::to_string(line_no) + ": bad number");
    }
    s.id = tok[4];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScenarioSpec> subsample(const std::vector<ScenarioSpec>& specs, int stride) {
  if (stride <= 1) return specs;
  std::vector<ScenarioSpec> out;
  for (std::size_t k = 0; k < specs.size(); k += static_cast<std::size_t>(stride)) {
    out.push_back(specs[k]);
  }
  return out;
}

}  // namespace rtgcn
