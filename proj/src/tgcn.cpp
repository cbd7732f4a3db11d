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

#include "rtgcn/tgcn.hpp"

#include <array>

namespace rtgcn {

namespace {

Parameter make_param(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                     Eigen::Index fan_in, std::mt19937_64* rng) {
  if (rng == nullptr) return Parameter(name, Matrix::Zero(rows, cols));
  return Parameter(name, init_uniform(rows, cols, fan_in, *rng));
}

TgcnParams build_params(const TgcnConfig& c, std::mt19937_64* rng, const std::string& prefix) {
  if (c.hidden < 1 || c.conv_out < 1 || c.horizon < 1) {
    throw InputError("TGCN dimensions must be positive");
  }
  TgcnParams p;
  p.config = c;
  const int gate_in = c.conv_out + c.hidden;
  p.w0 = make_param(prefix + ".w0", 1, c.hidden, 1, rng);
  p.w1 = make_param(prefix + ".w1", c.hidden, c.conv_out, c.hidden, rng);
  p.wu = make_param(prefix + ".wu", gate_in, c.hidden, gate_in, rng);
  p.wr = make_param(prefix + ".wr", gate_in, c.hidden, gate_in, rng);
  p.wz = make_param(prefix + ".wz", gate_in, c.hidden, gate_in, rng);
  p.bu = Parameter(prefix + ".bu", Matrix::Zero(1, c.hidden));
  p.br = Parameter(prefix + ".br", Matrix::Zero(1, c.hidden));
  p.bz = Parameter(prefix + ".bz", Matrix::Zero(1, c.hidden));
  p.w_out = make_param(prefix + ".w_out", c.hidden, c.horizon, c.hidden, rng);
  p.b_out = Parameter(prefix + ".b_out", Matrix::Zero(1, c.horizon));
  return p;
}

}  // namespace

TgcnParams TgcnParams::init(const TgcnConfig& config, std::mt19937_64& rng,
                            const std::string& prefix) {
  return build_params(config, &rng, prefix);
}

TgcnParams TgcnParams::zeros(const TgcnConfig& config, const std::string& prefix) {
  return build_params(config, nullptr, prefix);
}

std::vector<Parameter*> TgcnParams::encoder_parameters() {
  return {&w0, &w1, &wu, &wr, &wz, &bu, &br, &bz};
}

std::vector<Parameter*> TgcnParams::parameters() {
  auto out = encoder_parameters();
  out.push_back(&w_out);
  out.push_back(&b_out);
  return out;
}

Batch make_batch(const SampleSet& samples, std::span<const int> windows) {
  const int n = samples.num_nodes();
  const int b = static_cast<int>(windows.size());
  Batch batch;
  batch.num_nodes = n;
  batch.size = b;
  batch.steps.assign(samples.history, Matrix(n, b));
  batch.target.resize(static_cast<Eigen::Index>(n) * b, samples.horizon);
  for (int k = 0; k < b; ++k) {
    const int w = windows[k];
    for (int l = 0; l < samples.history; ++l) batch.steps[l].col(k) = samples.series.col(w + l);
    batch.target.middleRows(static_cast<Eigen::Index>(k) * n, n) = samples.target(w);
  }
  return batch;
}

Matrix unstack_prediction(const Matrix& stacked, int num_nodes, int batch) {
  const Eigen::Index horizon = stacked.cols();
  Matrix out(num_nodes, batch * horizon);
  for (int k = 0; k < batch; ++k) {
    out.middleCols(k * horizon, horizon) =
        stacked.middleRows(static_cast<Eigen::Index>(k) * num_nodes, num_nodes);
  }
  return out;
}

Var graph_conv(Var x, Var a_hat, TgcnParams& p) {
  Tape& tape = *x.tape();
  const Eigen::Index n = x.rows(), b = x.cols();
  const Eigen::Index hidden = p.w0.value.cols();
  // (A X) W0 with one input feature: stack windows as rows, then mix.
  Var ax = reshape(matmul(a_hat, x), n * b, 1);
  Var inner = relu(matmul(ax, tape.parameter(p.w0)));  // (N*B) x hidden
  Var mixed = matmul(a_hat, reshape(inner, n, b * hidden));
  Var outer = matmul(reshape(mixed, n * b, hidden), tape.parameter(p.w1));
  return sigmoid(outer);
}

Var gru_step(Var conv, Var h, TgcnParams& p) {
  Tape& tape = *conv.tape();
  Var fh = concat_cols(conv, h);
  Var u = sigmoid(add_row(matmul(fh, tape.parameter(p.wu)), tape.parameter(p.bu)));
  Var r = sigmoid(add_row(matmul(fh, tape.parameter(p.wr)), tape.parameter(p.br)));
  Var fz = concat_cols(conv, hadamard(r, h));
  Var z = tanh_act(add_row(matmul(fz, tape.parameter(p.wz)), tape.parameter(p.bz)));
  return add(hadamard(u, h), hadamard(affine(u, -1.0, 1.0), z));
}

Var tgcn_encode(Tape& tape, const Batch& batch, Var a_hat, TgcnParams& p) {
  const Eigen::Index rows = static_cast<Eigen::Index>(batch.num_nodes) * batch.size;
  Var h = tape.constant(Matrix::Zero(rows, p.config.hidden));
  for (const Matrix& step : batch.steps) {
    Var conv = graph_conv(tape.constant(step), a_hat, p);
    h = gru_step(conv, h, p);
  }
  return h;
}

Matrix forward(const Matrix& window, const NormalizedAdjacency& a_hat, TgcnParams& p) {
  Tape tape;
  tape.set_grad_enabled(false);
  Batch batch;
  batch.num_nodes = static_cast<int>(window.rows());
  batch.size = 1;
  for (Eigen::Index l = 0; l < window.cols(); ++l) batch.steps.push_back(window.col(l));
  Var h = tgcn_encode(tape, batch, tape.constant(a_hat.matrix), p);
  Var y = add_row(matmul(h, tape.parameter(p.w_out)), tape.parameter(p.b_out));
  return y.value();
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kBaseline:
      return "baseline";
    case Variant::kKgim:
      return "kgim";
    case Variant::kPkgimSlp:
      return "pkgim-slp";
    case Variant::kPkgimMlp:
      return "pkgim-mlp";
    case Variant::kPkgimAttn:
      return "pkgim-attn";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : all_variants()) {
    if (to_string(v) == name) return v;
  }
  throw InputError("unknown model variant '" + name + "'");
}

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> v = {Variant::kBaseline, Variant::kKgim, Variant::kPkgimSlp,
                                         Variant::kPkgimMlp, Variant::kPkgimAttn};
  return v;
}

bool uses_knowledge_graph(Variant v) { return v != Variant::kBaseline; }

TgcnForecaster::TgcnForecaster(const Graph& input, const TgcnConfig& config,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  params_ = TgcnParams::init(config, rng);
  a_hat_ = normalized_adjacency(input);
}

Var TgcnForecaster::forward(Tape& tape, const Batch& batch) {
  if (batch.num_nodes != a_hat_.matrix.rows()) {
    throw ShapeError("batch has " + std::to_string(batch.num_nodes) + " nodes, topology has " +
                     std::to_string(a_hat_.matrix.rows()));
  }
  Var h = tgcn_encode(tape, batch, tape.constant(a_hat_.matrix), params_);
  return add_row(matmul(h, tape.parameter(params_.w_out)), tape.parameter(params_.b_out));
}

void TgcnForecaster::set_input_topology(const Graph& g) { a_hat_ = normalized_adjacency(g); }

}  // namespace rtgcn
