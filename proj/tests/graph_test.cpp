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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rtgcn/graph.hpp"
#include "rtgcn/ieee118.hpp"
#include "rtgcn/util.hpp"

namespace rtgcn {
namespace {

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) e.emplace_back(i, j);
  return new_graph(n, e);
}

TEST(Graph, SingleEdgeAdjacency) {
  Graph g = new_graph(2, {{0, 1}});
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  EXPECT_EQ(g.adjacency(), expected);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(Graph, OrientationDuplicatesCollapse) {
  Graph g = new_graph(3, {{0, 1}, {1, 0}});
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(new_graph(3, {{0, 3}}), InputError);
  EXPECT_THROW(new_graph(3, {{-1, 2}}), InputError);
  EXPECT_THROW(new_graph(3, {{1, 1}}), InputError);
  EXPECT_THROW(new_graph(0, {}), InputError);
}

TEST(Graph, Ieee118EdgeCount) {
  std::vector<std::pair<int, int>> lines;
  for (const auto& b : ieee118_branches()) lines.emplace_back(b.from_bus - 1, b.to_bus - 1);
  EXPECT_EQ(lines.size(), 186u);
  Graph g = new_graph(118, lines);
  EXPECT_EQ(g.num_nodes(), 118);
  EXPECT_EQ(g.num_edges(), 179u);
  EXPECT_TRUE(g.is_connected());
}

TEST(Graph, InvariantsOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    Graph g = random_graph(rng, n, 0.35);
    const Matrix& a = g.adjacency();
    EXPECT_EQ(a, a.transpose());
    EXPECT_EQ(a.diagonal().sum(), 0.0);
    EXPECT_EQ(static_cast<std::size_t>(a.sum()) / 2, g.num_edges());
    for (const Edge& e : g.edges()) {
      EXPECT_LT(e.u, e.v);
      EXPECT_LT(e.v, n);
    }
  }
}

TEST(NormalizedAdjacency, SmallCases) {
  EXPECT_EQ(normalized_adjacency(new_graph(1, {})).matrix, Matrix::Ones(1, 1));
  Matrix half = Matrix::Constant(2, 2, 0.5);
  EXPECT_TRUE(normalized_adjacency(new_graph(2, {{0, 1}})).matrix.isApprox(half, 1e-15));
  Matrix path = normalized_adjacency(new_graph(3, {{0, 1}, {1, 2}})).matrix;
  EXPECT_NEAR(path(0, 1), 1.0 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(path(0, 1), 0.40825, 1e-5);
  EXPECT_NEAR(path(1, 1), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(path(0, 2), 0.0);
}

TEST(NormalizedAdjacency, RandomGraphProperties) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 15);
    Graph g = random_graph(rng, n, 0.3);
    Matrix a_hat = normalized_adjacency(g).matrix;
    EXPECT_EQ(a_hat, a_hat.transpose());
    EXPECT_GE(a_hat.minCoeff(), 0.0);
    EXPECT_LE(a_hat.maxCoeff(), 1.0);
    // Independent recomputation from degrees.
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = 1.0 + static_cast<double>(g.neighbors(i).size());
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(a_hat(i, i), 0.0);
      double row = 1.0 / d[i];
      for (int j : g.neighbors(i)) row += 1.0 / std::sqrt(d[i] * d[j]);
      EXPECT_NEAR(a_hat.row(i).sum(), row, 1e-12);
    }
    Vector v = sqrt_augmented_degrees(g);
    Vector av = a_hat * v;
    for (int i = 0; i < n; ++i) EXPECT_NEAR(av(i), v(i), 1e-12);
  }
}

TEST(OrMerge, Examples) {
  Graph k = new_graph(4, {{0, 2}, {1, 3}});
  EXPECT_EQ(or_merge(new_graph(4, {}), k), k);
  EXPECT_EQ(or_merge(k, k), k);
  Graph m = or_merge(new_graph(3, {{0, 1}}), new_graph(3, {{1, 2}}));
  EXPECT_EQ(m, new_graph(3, {{0, 1}, {1, 2}}));
  EXPECT_THROW(or_merge(new_graph(3, {}), new_graph(4, {})), InputError);
}

TEST(OrMerge, AlgebraOnRandomPairs) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    Graph a = random_graph(rng, n, 0.3);
    Graph b = random_graph(rng, n, 0.3);
    Graph c = random_graph(rng, n, 0.3);
    EXPECT_EQ(or_merge(a, b), or_merge(b, a));
    EXPECT_EQ(or_merge(or_merge(a, b), c), or_merge(a, or_merge(b, c)));
    EXPECT_EQ(or_merge(a, a), a);
    // Elementwise OR of the adjacency matrices.
    Matrix expected = a.adjacency().cwiseMax(b.adjacency());
    EXPECT_EQ(or_merge(a, b).adjacency(), expected);
  }
}

TEST(EdgeOverlap, Partitions) {
  Graph g = new_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(edge_overlap(g, g), (EdgeOverlap{3, 0, 0}));
  Graph h = new_graph(4, {{0, 2}, {1, 3}});
  EXPECT_EQ(edge_overlap(g, h), (EdgeOverlap{0, 3, 2}));
  EXPECT_THROW(edge_overlap(g, new_graph(5, {})), InputError);

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    Graph a = random_graph(rng, 9, 0.4);
    Graph b = random_graph(rng, 9, 0.4);
    EdgeOverlap ab = edge_overlap(a, b), ba = edge_overlap(b, a);
    EXPECT_EQ(ab.common, ba.common);
    EXPECT_EQ(ab.only_a, ba.only_b);
    EXPECT_EQ(ab.common + ab.only_a, a.num_edges());
    EXPECT_EQ(ab.common + ab.only_b, b.num_edges());
    EXPECT_EQ(ab.common + ab.only_a + ab.only_b, or_merge(a, b).num_edges());
  }
}

TEST(Graph, Components) {
  Graph g = new_graph(5, {{0, 1}, {3, 4}});
  EXPECT_FALSE(g.is_connected());
  EXPECT_EQ(g.components(), (std::vector<int>{0, 0, 2, 3, 3}));
  EXPECT_TRUE(new_graph(1, {}).is_connected());
}

TEST(EdgeList, RoundTripWithHeader) {
  Graph g = new_graph(6, {{0, 1}, {2, 5}, {3, 4}});
  std::string text = format_edge_list(g, {{"method", "pearson"}, {"threshold", "0.9985"}});
  EdgeListFile f = parse_edge_list(text);
  EXPECT_EQ(f.graph, g);
  EXPECT_EQ(f.header.at("method"), "pearson");
  EXPECT_EQ(f.header.at("threshold"), "0.9985");
}

TEST(EdgeList, RejectsMalformedLines) {
  EXPECT_THROW(parse_edge_list("0 0\n", 3), InputError);
  EXPECT_THROW(parse_edge_list("0 7\n", 3), InputError);
  EXPECT_THROW(parse_edge_list("0 x\n", 3), InputError);
  EXPECT_THROW(parse_edge_list("0\n", 3), InputError);
  EXPECT_THROW(parse_edge_list("# nodes: 4\n0 1\n", 5), InputError);
  EdgeListFile inferred = parse_edge_list("# comment\n0 3\n\n1 2  # trailing\n");
  EXPECT_EQ(inferred.graph.num_nodes(), 4);
  EXPECT_EQ(inferred.graph.num_edges(), 2u);
}

}  // namespace
}  // namespace rtgcn
