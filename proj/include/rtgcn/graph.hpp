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

#ifndef RTGCN_GRAPH_HPP_
#define RTGCN_GRAPH_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rtgcn/util.hpp"

namespace rtgcn {

// Unordered node pair, always stored with first < second.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

// Undirected simple graph over nodes 0..N-1 with a dense 0/1 adjacency.
// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  int num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  // Sorted ascending.
  const std::vector<Edge>& edges() const { return edges_; }
  const Matrix& adjacency() const { return adjacency_; }

  bool has_edge(int i, int j) const;
  int degree(int i) const;
  // Sorted neighbor list of node i.
  std::vector<int> neighbors(int i) const;

  bool is_connected() const;
  // Component label per node, labels numbered by smallest member.
  std::vector<int> components() const;

  bool operator==(const Graph& other) const {
    return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
  }

 private:
  friend Graph new_graph(int, const std::vector<std::pair<int, int>>&);
  friend Graph graph_from_edges(int, std::vector<Edge>);

  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  Matrix adjacency_;
};

// Builds a graph, collapsing duplicate pairs in either orientation.
// Throws InputError on out-of-range indices or self-loops.
Graph new_graph(int num_nodes, const std::vector<std::pair<int, int>>& edge_list);
Graph graph_from_edges(int num_nodes, std::vector<Edge> edges);

// D^{-1/2} (A + I) D^{-1/2}, with D the degree matrix of A + I.
struct NormalizedAdjacency {
  Matrix matrix;
};

NormalizedAdjacency normalized_adjacency(const Graph& g);

// Square roots of the augmented degrees (degree + 1).
Vector sqrt_augmented_degrees(const Graph& g);

// Elementwise OR of the two adjacency matrices.
Graph or_merge(const Graph& base, const Graph& knowledge);

struct EdgeOverlap {
  std::size_t common = 0;
  std::size_t only_a = 0;
  std::size_t only_b = 0;

  bool operator==(const EdgeOverlap&) const = default;
};

EdgeOverlap edge_overlap(const Graph& a, const Graph& b);

// Edge-list text format: one "i j" pair per line, 0-based, '#' starts a
// comment. A "# nodes: N" comment fixes the node count; otherwise it is
// taken from `num_nodes` or inferred as max index + 1.
struct EdgeListFile {
  Graph graph;
  std::map<std::string, std::string> header;  // "# key: value" comments
};

EdgeListFile read_edge_list(const std::filesystem::path& path, int num_nodes = 0);
EdgeListFile parse_edge_list(const std::string& text, int num_nodes = 0);
void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     const std::vector<std::pair<std::string, std::string>>& header = {});
std::string format_edge_list(const Graph& g,
                             const std::vector<std::pair<std::string, std::string>>& header = {});

}  // namespace rtgcn

#endif  // RTGCN_GRAPH_HPP_
