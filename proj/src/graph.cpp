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

#include "rtgcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace rtgcn {

Graph graph_from_edges(int num_nodes, std::vector<Edge> edges) {
  if (num_nodes <= 0) throw InputError("graph must have at least one node");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= num_nodes) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") out of range for " + std::to_string(num_nodes) + " nodes");
    }
    if (e.u == e.v) throw InputError("self-loop at node " + std::to_string(e.u));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.num_nodes_ = num_nodes;
  g.edges_ = std::move(edges);
  g.adjacency_ = Matrix::Zero(num_nodes, num_nodes);
  for (const Edge& e : g.edges_) {
    g.adjacency_(e.u, e.v) = 1.0;
    g.adjacency_(e.v, e.u) = 1.0;
  }
  return g;
}

Graph new_graph(int num_nodes, const std::vector<std::pair<int, int>>& edge_list) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  for (auto [a, b] : edge_list) {
    if (a == b) throw InputError("self-loop at node " + std::to_string(a));
    edges.emplace_back(a, b);
  }
  return graph_from_edges(num_nodes, std::move(edges));
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= num_nodes_ || j >= num_nodes_) return false;
  return adjacency_(i, j) != 0.0;
}

int Graph::degree(int i) const {
  return static_cast<int>(adjacency_.col(i).sum());
}

std::vector<int> Graph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < num_nodes_; ++j) {
    if (adjacency_(j, i) != 0.0) out.push_back(j);
  }
  return out;
}

std::vector<int> Graph::components() const {
  std::vector<int> label(num_nodes_, -1);
  for (int s = 0; s < num_nodes_; ++s) {
    if (label[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    label[s] = s;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : neighbors(x)) {
        if (label[y] < 0) {
          label[y] = s;
          q.push(y);
        }
      }
    }
  }
  return label;
}

bool Graph::is_connected() const {
  auto label = components();
  return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

Vector sqrt_augmented_degrees(const Graph& g) {
  Vector d = g.adjacency().colwise().sum().transpose();
  return (d.array() + 1.0).sqrt();
}

NormalizedAdjacency normalized_adjacency(const Graph& g) {
  const int n = g.num_nodes();
  Vector inv_sqrt = sqrt_augmented_degrees(g).cwiseInverse();
  Matrix a_tilde = g.adjacency() + Matrix::Identity(n, n);
  NormalizedAdjacency out;
  out.matrix = inv_sqrt.asDiagonal() * a_tilde * inv_sqrt.asDiagonal();
  return out;
}

namespace {

void require_same_size(const Graph& a, const Graph& b, const char* what) {
  if (a.num_nodes() != b.num_nodes()) {
    throw InputError(std::string(what) + ": node-count mismatch (" +
                     std::to_string(a.num_nodes()) + " vs " +
                     std::to_string(b.num_nodes()) + ")");
  }
}

}  // namespace

Graph or_merge(const Graph& base, const Graph& knowledge) {
  require_same_size(base, knowledge, "or_merge");
  std::vector<Edge> edges;
  std::set_union(base.edges().begin(), base.edges().end(), knowledge.edges().begin(),
                 knowledge.edges().end(), std::back_inserter(edges));
  return graph_from_edges(base.num_nodes(), std::move(edges));
}

EdgeOverlap edge_overlap(const Graph& a, const Graph& b) {
  require_same_size(a, b, "edge_overlap");
  std::vector<Edge> common;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(),
                        b.edges().end(), std::back_inserter(common));
  EdgeOverlap o;
  o.common = common.size();
  o.only_a = a.num_edges() - o.common;
  o.only_b = b.num_edges() - o.common;
  return o;
}

EdgeListFile parse_edge_list(const std::string& text, int num_nodes) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, int>> pairs;
  EdgeListFile out;
  int line_no = 0;
  int max_index = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      std::string_view body = trim(view.substr(1));
      auto colon = body.find(':');
      if (colon != std::string_view::npos) {
        out.header[std::string(trim(body.substr(0, colon)))] =
            std::string(trim(body.substr(colon + 1)));
      }
      continue;
    }
    auto hash = view.find('#');
    if (hash != std::string_view::npos) view = trim(view.substr(0, hash));
    auto tok = split_ws(view);
    if (tok.size() < 2) {
      throw InputError("edge list line " + std::to_string(line_no) + ": expected 'i j'");
    }
    int i = 0, j = 0;
    try {
      std::size_t pos = 0;
      i = std::stoi(tok[0], &pos);
      if (pos != tok[0].size()) throw std::invalid_argument("");
      j = std::stoi(tok[1], &pos);
      if (pos != tok[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("edge list line " + std::to_string(line_no) + ": non-integer index");
    }
    if (i < 0 || j < 0) {
      throw InputError("edge list line " + std::to_string(line_no) + ": negative index");
    }
    if (i == j) {
      throw InputError("edge list line " + std::to_string(line_no) + ": self-loop at node " +
                       std::to_string(i));
    }
    max_index = std::max({max_index, i, j});
    pairs.emplace_back(i, j);
  }
  int n = num_nodes;
  if (auto it = out.header.find("nodes"); it != out.header.end()) {
    int declared = std::stoi(it->second);
    if (n > 0 && n != declared) {
      throw InputError("edge list declares " + it->second + " nodes, expected " +
                       std::to_string(n));
    }
    n = declared;
  }
  if (n <= 0) n = max_index + 1;
  if (max_index >= n) {
    throw InputError("edge list index " + std::to_string(max_index) + " out of range for " +
                     std::to_string(n) + " nodes");
  }
  out.graph = new_graph(n, pairs);
  return out;
}

EdgeListFile read_edge_list(const std::filesystem::path& path, int num_nodes) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str(), num_nodes);
}

std::string format_edge_list(const Graph& g,
                             const std::vector<std::pair<std::string, std::string>>& header) {
  std::ostringstream out;
  out << "# nodes: " << g.num_nodes() << "\n";
  out << "# edges: " << g.num_edges() << "\n";
  for (const auto& [k, v] : header) out << "# " << k << ": " << v << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     const std::vector<std::pair<std::string, std::string>>& header) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write edge list " + path.string());
  out << format_edge_list(g, header);
}

}  // namespace rtgcn
