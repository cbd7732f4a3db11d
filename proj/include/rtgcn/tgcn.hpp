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

#ifndef RTGCN_TGCN_HPP_
#define RTGCN_TGCN_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rtgcn/autodiff.hpp"
#include "rtgcn/datagen.hpp"
#include "rtgcn/graph.hpp"

namespace rtgcn {

// Per-node scalar angle per time step (one input feature).
struct TgcnConfig {
  int hidden = 64;    // GRU hidden units
  int conv_out = 64;  // graph-convolution output width
  int history = 10;
  int horizon = 1;
};

// Graph-convolution weights, GRU gates and the linear readout.
// Gate matrices act on [conv output, hidden] concatenated column-wise.
struct TgcnParams {
  Parameter w0;  // 1 x hidden
  Parameter w1;  // hidden x conv_out
  Parameter wu, wr, wz;  // (conv_out + hidden) x hidden
  Parameter bu, br, bz;  // 1 x hidden
  Parameter w_out;  // hidden x horizon
  Parameter b_out;  // 1 x horizon
  TgcnConfig config;

  // Uniform +-1/sqrt(fan_in) weights, zero biases, drawn in a fixed order.
  static TgcnParams init(const TgcnConfig& config, std::mt19937_64& rng,
                         const std::string& prefix = "tgcn");
  static TgcnParams zeros(const TgcnConfig& config, const std::string& prefix = "tgcn");

  // Encoder parameters only (no readout).
  std::vector<Parameter*> encoder_parameters();
  std::vector<Parameter*> parameters();
};

// A mini-batch of B windows. steps[l] is N x B (column b is window b at
// history step l); target is (N*B) x horizon with sample-major rows
// (row n + N*b).
struct Batch {
  std::vector<Matrix> steps;
  Matrix target;
  int num_nodes = 0;
  int size = 0;
};

Batch make_batch(const SampleSet& samples, std::span<const int> windows);
// Reorders an (N*B) x horizon block back to N x (B*horizon), window-major.
Matrix unstack_prediction(const Matrix& stacked, int num_nodes, int batch);

// sigmoid(A_hat relu(A_hat X W0) W1) for X = N x B, returning (N*B) x conv_out.
Var graph_conv(Var x, Var a_hat, TgcnParams& p);
// One GRU update on (N*B)-row inputs.
Var gru_step(Var conv, Var h, TgcnParams& p);
// Runs the recurrence over all history steps from a zero state and
// returns the final hidden state, (N*B) x hidden.
Var tgcn_encode(Tape& tape, const Batch& batch, Var a_hat, TgcnParams& p);

// Single-window convenience: N x L history to N x horizon prediction.
Matrix forward(const Matrix& window, const NormalizedAdjacency& a_hat, TgcnParams& p);

enum class Variant { kBaseline, kKgim, kPkgimSlp, kPkgimMlp, kPkgimAttn };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);
const std::vector<Variant>& all_variants();
bool uses_knowledge_graph(Variant v);

// Common surface for every trainable estimator. Predictions live in
// "model space" = target_scale * normalized + target_offset.
class Forecaster {
 public:
  virtual ~Forecaster() = default;

  virtual Variant variant() const = 0;
  virtual std::vector<Parameter*> parameters() = 0;
  virtual Var forward(Tape& tape, const Batch& batch) = 0;

  // Replaces the (possibly inaccurate) system topology the model sees.
  virtual void set_input_topology(const Graph& g) = 0;

  virtual double target_scale() const { return 1.0; }
  virtual double target_offset() const { return 0.0; }
};

// The baseline estimator.
class TgcnForecaster : public Forecaster {
 public:
  TgcnForecaster(const Graph& input, const TgcnConfig& config, std::uint64_t seed);

  Variant variant() const override { return Variant::kBaseline; }
  std::vector<Parameter*> parameters() override { return params_.parameters(); }
  Var forward(Tape& tape, const Batch& batch) override;
  void set_input_topology(const Graph& g) override;

  TgcnParams& params() { return params_; }
  const NormalizedAdjacency& adjacency() const { return a_hat_; }

 private:
  TgcnParams params_;
  NormalizedAdjacency a_hat_;
};

}  // namespace rtgcn

#endif  // RTGCN_TGCN_HPP_
