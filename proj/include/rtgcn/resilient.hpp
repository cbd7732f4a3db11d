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

#ifndef RTGCN_RESILIENT_HPP_
#define RTGCN_RESILIENT_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "rtgcn/tgcn.hpp"

namespace rtgcn {

// Message-passing topology for KGIM: input OR knowledge, normalized, plus
// freshly initialized TGCN weights.
std::pair<NormalizedAdjacency, TgcnParams> kgim_build(const Graph& inaccurate, const Graph& kg,
                                                      const TgcnConfig& config,
                                                      std::mt19937_64& rng);

// TGCN over the OR-merge of the input topology and a knowledge graph.
// Initialization matches TgcnForecaster for the same seed.
class KgimForecaster : public Forecaster {
 public:
  KgimForecaster(const Graph& input, Graph knowledge, const TgcnConfig& config,
                 std::uint64_t seed);

  Variant variant() const override { return Variant::kKgim; }
  std::vector<Parameter*> parameters() override { return inner_.parameters(); }
  Var forward(Tape& tape, const Batch& batch) override { return inner_.forward(tape, batch); }
  void set_input_topology(const Graph& g) override;

  const NormalizedAdjacency& adjacency() const { return inner_.adjacency(); }
  TgcnParams& params() { return inner_.params(); }

 private:
  Graph knowledge_;
  TgcnForecaster inner_;
};

enum class AggregatorKind { kSlp, kMlp, kAttn };

// Fusion weights for the two channel embeddings (each N x hidden).
//  SLP:  relu([X1 W1 | X2 W2] W3 + b3)
//  MLP:  relu([X1 | X2] W1 + b1) W2 + b2
//  Attn: (softmax_rows([X1 | X2] W1) .* [X1 | X2]) W2 + b2
struct AggregatorParams {
  AggregatorKind kind = AggregatorKind::kSlp;
  Parameter w1, w2, w3;
  Parameter b1, b2, b3;

  static AggregatorParams init(AggregatorKind kind, int hidden, int horizon,
                               std::mt19937_64& rng);
  std::vector<Parameter*> parameters();
};

Var slp_aggregate(Var x1, Var x2, AggregatorParams& p);
Var mlp_aggregate(Var x1, Var x2, AggregatorParams& p);
// Also exposes the row-stochastic score matrix through `scores` when given.
Var attention_aggregate(Var x1, Var x2, AggregatorParams& p, Var* scores = nullptr);
Var aggregate(Var x1, Var x2, AggregatorParams& p);

// Two TGCN encoders, one over the input topology and one over the
// knowledge graph, fused by an aggregator and trained jointly.
class PkgimForecaster : public Forecaster {
 public:
  PkgimForecaster(const Graph& input, const Graph& knowledge, AggregatorKind kind,
                  const TgcnConfig& config, std::uint64_t seed);

  Variant variant() const override;
  std::vector<Parameter*> parameters() override;
  Var forward(Tape& tape, const Batch& batch) override;
  void set_input_topology(const Graph& g) override;

  // SLP outputs are ReLU-bounded, so it is trained on targets mapped from
  // [-1, 1] to [0, 1].
  double target_scale() const override { return kind_ == AggregatorKind::kSlp ? 0.5 : 1.0; }
  double target_offset() const override { return kind_ == AggregatorKind::kSlp ? 0.5 : 0.0; }

  TgcnParams& input_channel() { return channel1_; }
  TgcnParams& knowledge_channel() { return channel2_; }
  AggregatorParams& aggregator() { return agg_; }
  void set_knowledge_topology(const Graph& g) { a_hat2_ = normalized_adjacency(g); }

 private:
  AggregatorKind kind_;
  TgcnParams channel1_;
  TgcnParams channel2_;
  AggregatorParams agg_;
  NormalizedAdjacency a_hat1_;
  NormalizedAdjacency a_hat2_;
};

// Builds any variant. `knowledge` is ignored by the baseline.
std::unique_ptr<Forecaster> make_forecaster(Variant variant, const Graph& input,
                                            const Graph& knowledge, const TgcnConfig& config,
                                            std::uint64_t seed);

}  // namespace rtgcn

#endif  // RTGCN_RESILIENT_HPP_
