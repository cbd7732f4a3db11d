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

#ifndef RTGCN_KNOWLEDGE_GRAPH_HPP_
#define RTGCN_KNOWLEDGE_GRAPH_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rtgcn/autodiff.hpp"
#include "rtgcn/datagen.hpp"
#include "rtgcn/graph.hpp"

namespace rtgcn {

enum class KgMethod { kCosine, kPearson, kGat };

std::string to_string(KgMethod m);
KgMethod parse_kg_method(const std::string& name);

// Pairwise similarity of the per-node series. Rows/columns of degenerate
// nodes (zero norm for cosine, zero variance for Pearson) are zero and
// flagged invalid.
struct SimilarityMatrix {
  Matrix values;
  std::vector<bool> valid;

  // Similarities of all valid pairs i < j, row-major pair order.
  std::vector<double> pair_values() const;
};

SimilarityMatrix cosine_similarity(const Matrix& series);
SimilarityMatrix pearson_correlation(const Matrix& series);

// Keeps {i, j} when s_ij > threshold (valid pairs only).
Graph threshold_graph(const SimilarityMatrix& sim, double threshold);

// Mean cosine similarity over valid pairs.
double mean_pair_similarity(const SimilarityMatrix& sim);

// Edge iff s_ij > alpha * mean similarity.
Graph cosine_kg(const TimeSeriesDataset& data, double alpha);
// Edge iff c_ij > threshold. Throws InputError when no node has variance.
Graph pearson_kg(const TimeSeriesDataset& data, double threshold);

struct ThresholdCalibration {
  double threshold = 0.0;
  std::size_t achieved = 0;
  // Cosine only: threshold / mean similarity, usable with cosine_kg.
  double alpha = 0.0;
};

// Picks a threshold between consecutive sorted similarity values so that
// the edge count lands within +-tolerance of the target.
ThresholdCalibration calibrate_kg_threshold(const TimeSeriesDataset& data, KgMethod method,
                                            std::size_t target_edges, std::size_t tolerance);

// Single-head graph attention layer.
struct GatLayer {
  Parameter w;      // features x hidden
  Parameter a_src;  // hidden x 1, first half of the attention vector
  Parameter a_dst;  // hidden x 1, second half

  static GatLayer init(int features, int hidden, std::mt19937_64& rng);
  std::vector<Parameter*> parameters() { return {&w, &a_src, &a_dst}; }
};

struct GatOutput {
  Var out;        // N x hidden, ELU(attention * X W)
  Var attention;  // N x N, rows sum to 1 over candidates
};

// E(i, m) = leaky_relu(a_src . (X W)_i + a_dst . (X W)_m), softmax over the
// candidate mask (nonzero entries, self-loops included), then ELU of the
// attention-weighted transformed features.
GatOutput gat_forward(Var x, const Matrix& candidate_mask, GatLayer& layer);

// Attention heads plus a linear readout to one prediction per node. Head
// outputs are concatenated; the attention used for edge scoring is the
// mean over heads.
struct GatPredictor {
  std::vector<GatLayer> heads;
  Parameter w_out;  // (heads * hidden) x 1
  Parameter b_out;  // 1 x 1

  static GatPredictor init(int features, int hidden, int num_heads, std::mt19937_64& rng);
  std::vector<Parameter*> parameters();
  // Returns the N x 1 prediction; writes the head-averaged attention.
  Var forward(Var x, const Matrix& candidate_mask, Matrix* attention = nullptr);
};

struct GatTrainConfig {
  int history = 10;
  int hidden = 16;
  int epochs = 15;
  int batch_size = 16;
  double learning_rate = 5e-3;
  int heads = 1;
  // Stride between training windows (1 = every window).
  int window_stride = 2;
  std::uint64_t seed = 1;
};

struct GatKgResult {
  Graph graph;
  Matrix pair_scores;  // symmetrized time-averaged attention
  std::vector<double> loss_history;
};

// Trains one GAT layer plus a linear readout on one-step-ahead prediction
// over the complete candidate graph, then keeps the `target_edges` pairs
// with the largest (mu_ij + mu_ji) / 2 averaged over training windows.
// Ties break by pair order.
GatKgResult gat_kg(const TimeSeriesDataset& data, std::size_t target_edges,
                   const GatTrainConfig& config);

// Top-k unordered pairs of a symmetric score matrix (strict upper triangle).
Graph top_k_pairs(const Matrix& scores, std::size_t k);

struct KgConfig {
  KgMethod method = KgMethod::kCosine;
  double alpha = 2.17;
  double pearson_threshold = 0.9985;
  std::size_t gat_target_edges = 230;
  GatTrainConfig gat;
  // When nonzero, cosine/Pearson thresholds are calibrated to this count.
  std::size_t calibrate_to = 0;
  std::size_t calibrate_tolerance = 2;
};

struct KnowledgeGraph {
  Graph graph;
  KgMethod method = KgMethod::kCosine;
  std::vector<std::pair<std::string, std::string>> provenance;
};

// Builds a knowledge graph from (training) data and records the settings
// used in `provenance` for the edge-list header.
KnowledgeGraph build_knowledge_graph(const TimeSeriesDataset& data, const KgConfig& config);

}  // namespace rtgcn

#endif  // RTGCN_KNOWLEDGE_GRAPH_HPP_
