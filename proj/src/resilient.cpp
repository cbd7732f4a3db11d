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

#include "rtgcn/resilient.hpp"

namespace rtgcn {

std::pair<NormalizedAdjacency, TgcnParams> kgim_build(const Graph& inaccurate, const Graph& kg,
                                                      const TgcnConfig& config,
                                                      std::mt19937_64& rng) {
  Graph merged = or_merge(inaccurate, kg);
  return {normalized_adjacency(merged), TgcnParams::init(config, rng)};
}

KgimForecaster::KgimForecaster(const Graph& input, Graph knowledge, const TgcnConfig& config,
                               std::uint64_t seed)
    : knowledge_(std::move(knowledge)), inner_(or_merge(input, knowledge_), config, seed) {}

void KgimForecaster::set_input_topology(const Graph& g) {
  inner_.set_input_topology(or_merge(g, knowledge_));
}

AggregatorParams AggregatorParams::init(AggregatorKind kind, int hidden, int horizon,
                                        std::mt19937_64& rng) {
  AggregatorParams p;
  p.kind = kind;
  const int cat = 2 * hidden;
  auto w = [&rng](const char* name, int rows, int cols) {
    return Parameter(std::string("agg.") + name, init_uniform(rows, cols, rows, rng));
  };
  auto zero = [](const char* name, int cols) {
    return Parameter(std::string("agg.") + name, Matrix::Zero(1, cols));
  };
  switch (kind) {
    case AggregatorKind::kSlp:
      p.w1 = w("w1", hidden, hidden);
      p.w2 = w("w2", hidden, hidden);
      p.w3 = w("w3", cat, horizon);
      // Start at the middle of the [0, 1] target range so the output ReLU
      // is active from the first step.
      p.b3 = Parameter("agg.b3", Matrix::Constant(1, horizon, 0.5));
      break;
    case AggregatorKind::kMlp:
      p.w1 = w("w1", cat, hidden);
      p.b1 = zero("b1", hidden);
      p.w2 = w("w2", hidden, horizon);
      p.b2 = zero("b2", horizon);
      break;
    case AggregatorKind::kAttn:
      p.w1 = w("w1", cat, cat);
      p.w2 = w("w2", cat, horizon);
      p.b2 = zero("b2", horizon);
      break;
  }
  return p;
}

std::vector<Parameter*> AggregatorParams::parameters() {
  switch (kind) {
    case AggregatorKind::kSlp:
      return {&w1, &w2, &w3, &b3};
    case AggregatorKind::kMlp:
      return {&w1, &b1, &w2, &b2};
    case AggregatorKind::kAttn:
      return {&w1, &w2, &b2};
  }
  return {};
}

namespace {

void check_channels(Var x1, Var x2, const char* op) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw ShapeError(std::string(op) + ": channel embeddings differ in shape (" +
                     shape_string(x1.value()) + " vs " + shape_string(x2.value()) + ")");
  }
}

}  // namespace

Var slp_aggregate(Var x1, Var x2, AggregatorParams& p) {
  check_channels(x1, x2, "slp_aggregate");
  Tape& tape = *x1.tape();
  Var t1 = matmul(x1, tape.parameter(p.w1));
  Var t2 = matmul(x2, tape.parameter(p.w2));
  Var out = add_row(matmul(concat_cols(t1, t2), tape.parameter(p.w3)), tape.parameter(p.b3));
  return relu(out);
}

Var mlp_aggregate(Var x1, Var x2, AggregatorParams& p) {
  check_channels(x1, x2, "mlp_aggregate");
  Tape& tape = *x1.tape();
  Var hidden =
      relu(add_row(matmul(concat_cols(x1, x2), tape.parameter(p.w1)), tape.parameter(p.b1)));
  return add_row(matmul(hidden, tape.parameter(p.w2)), tape.parameter(p.b2));
}

Var attention_aggregate(Var x1, Var x2, AggregatorParams& p, Var* scores) {
  check_channels(x1, x2, "attention_aggregate");
  Tape& tape = *x1.tape();
  Var cat = concat_cols(x1, x2);
  Var w = softmax_rows(matmul(cat, tape.parameter(p.w1)));
  if (scores != nullptr) *scores = w;
  return add_row(matmul(hadamard(w, cat), tape.parameter(p.w2)), tape.parameter(p.b2));
}

Var aggregate(Var x1, Var x2, AggregatorParams& p) {
  switch (p.kind) {
    case AggregatorKind::kSlp:
      return slp_aggregate(x1, x2, p);
    case AggregatorKind::kMlp:
      return mlp_aggregate(x1, x2, p);
    case AggregatorKind::kAttn:
      return attention_aggregate(x1, x2, p);
  }
  throw std::logic_error("unknown aggregator");
}

PkgimForecaster::PkgimForecaster(const Graph& input, const Graph& knowledge,
                                 AggregatorKind kind, const TgcnConfig& config,
                                 std::uint64_t seed)
    : kind_(kind) {
  if (input.num_nodes() != knowledge.num_nodes()) {
    throw InputError("PKGIM channels need equal node counts");
  }
  std::mt19937_64 rng(seed);
  channel1_ = TgcnParams::init(config, rng, "ch1");
  channel2_ = TgcnParams::init(config, rng, "ch2");
  agg_ = AggregatorParams::init(kind, config.hidden, config.horizon, rng);
  a_hat1_ = normalized_adjacency(input);
  a_hat2_ = normalized_adjacency(knowledge);
}

Variant PkgimForecaster::variant() const {
  switch (kind_) {
    case AggregatorKind::kSlp:
      return Variant::kPkgimSlp;
    case AggregatorKind::kMlp:
      return Variant::kPkgimMlp;
    case AggregatorKind::kAttn:
      return Variant::kPkgimAttn;
  }
  return Variant::kPkgimSlp;
}

std::vector<Parameter*> PkgimForecaster::parameters() {
  // The per-channel readouts are unused; only encoders and the aggregator train.
  auto out = channel1_.encoder_parameters();
  for (Parameter* p : channel2_.encoder_parameters()) out.push_back(p);
  for (Parameter* p : agg_.parameters()) out.push_back(p);
  return out;
}

Var PkgimForecaster::forward(Tape& tape, const Batch& batch) {
  Var h1 = tgcn_encode(tape, batch, tape.constant(a_hat1_.matrix), channel1_);
  Var h2 = tgcn_encode(tape, batch, tape.constant(a_hat2_.matrix), channel2_);
  return aggregate(h1, h2, agg_);
}

void PkgimForecaster::set_input_topology(const Graph& g) { a_hat1_ = normalized_adjacency(g); }

std::unique_ptr<Forecaster> make_forecaster(Variant variant, const Graph& input,
                                            const Graph& knowledge, const TgcnConfig& config,
                                            std::uint64_t seed) {
  switch (variant) {
    case Variant::kBaseline:
      return std::make_unique<TgcnForecaster>(input, config, seed);
    case Variant::kKgim:
      return std::make_unique<KgimForecaster>(input, knowledge, config, seed);
    case Variant::kPkgimSlp:
      return std::make_unique<PkgimForecaster>(input, knowledge, AggregatorKind::kSlp, config,
                                               seed);
    case Variant::kPkgimMlp:
      return std::make_unique<PkgimForecaster>(input, knowledge, AggregatorKind::kMlp, config,
                                               seed);
    case Variant::kPkgimAttn:
      return std::make_unique<PkgimForecaster>(input, knowledge, AggregatorKind::kAttn, config,
                                               seed);
  }
  throw std::logic_error("unknown variant");
}

}  // namespace rtgcn
