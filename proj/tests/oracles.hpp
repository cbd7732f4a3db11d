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


// Reference computations shared by the unit tests and the acceptance
// binary. Nothing here depends on a test framework.

#ifndef RTGCN_TESTS_ORACLES_HPP_
#define RTGCN_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtgcn/gradcheck.hpp"
#include "rtgcn/knowledge_graph.hpp"
#include "rtgcn/resilient.hpp"
#include "rtgcn/tgcn.hpp"

namespace rtgcn::oracle {

inline Matrix uniform(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                      double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return new_graph(n, edges);
}

// ---- single-op gradient checks ----

inline const std::vector<std::string>& op_names() {
  static const std::vector<std::string> names = {
      "matmul",  "add",  "sub",  "hadamard",   "concat_cols", "scale",        "affine",
      "add_row", "outer_sum", "reshape", "sigmoid", "tanh",   "relu",         "leaky_relu",
      "elu",     "softmax_rows", "masked_softmax_rows", "mean", "mse_loss"};
  return names;
}

// Random operands for `op`; the loss weights every output entry with a
// random coefficient so no gradient is trivially uniform.
inline GradCheckReport op_gradcheck(std::mt19937_64& rng, const std::string& op) {
  const Eigen::Index r = 1 + rng() % 5, c = 1 + rng() % 5, k = 1 + rng() % 4;
  std::vector<Parameter> p;
  p.reserve(2);
  auto make = [&](Eigen::Index rows, Eigen::Index cols) {
    p.emplace_back("p" + std::to_string(p.size()), uniform(rng, rows, cols, -2, 2));
  };
  Matrix mask;
  std::function<Var(std::vector<Var>&)> f;
  if (op == "matmul") {
    make(r, k), make(k, c);
    f = [](std::vector<Var>& v) { return matmul(v[0], v[1]); };
  } else if (op == "add") {
    make(r, c), make(r, c);
    f = [](std::vector<Var>& v) { return add(v[0], v[1]); };
  } else if (op == "sub") {
    make(r, c), make(r, c);
    f = [](std::vector<Var>& v) { return sub(v[0], v[1]); };
  } else if (op == "hadamard") {
    make(r, c), make(r, c);
    f = [](std::vector<Var>& v) { return hadamard(v[0], v[1]); };
  } else if (op == "concat_cols") {
    make(r, c), make(r, k);
    f = [](std::vector<Var>& v) { return concat_cols(v[0], v[1]); };
  } else if (op == "scale") {
    make(r, c);
    f = [](std::vector<Var>& v) { return scale(v[0], -1.7); };
  } else if (op == "affine") {
    make(r, c);
    f = [](std::vector<Var>& v) { return affine(v[0], -1.0, 1.0); };
  } else if (op == "add_row") {
    make(r, c), make(1, c);
    f = [](std::vector<Var>& v) { return add_row(v[0], v[1]); };
  } else if (op == "outer_sum") {
    make(r, 1), make(c, 1);
    f = [](std::vector<Var>& v) { return outer_sum(v[0], v[1]); };
  } else if (op == "reshape") {
    make(r, c * k);
    f = [r, c, k](std::vector<Var>& v) { return reshape(v[0], r * k, c); };
  } else if (op == "sigmoid") {
    make(r, c);
    f = [](std::vector<Var>& v) { return sigmoid(v[0]); };
  } else if (op == "tanh") {
    make(r, c);
    f = [](std::vector<Var>& v) { return tanh_act(v[0]); };
  } else if (op == "relu") {
    make(r, c);
    f = [](std::vector<Var>& v) { return relu(v[0]); };
  } else if (op == "leaky_relu") {
    make(r, c);
    f = [](std::vector<Var>& v) { return leaky_relu(v[0], 0.2); };
  } else if (op == "elu") {
    make(r, c);
    f = [](std::vector<Var>& v) { return elu(v[0]); };
  } else if (op == "softmax_rows") {
    make(r, c);
    f = [](std::vector<Var>& v) { return softmax_rows(v[0]); };
  } else if (op == "masked_softmax_rows") {
    make(r, c);
    mask = Matrix::Ones(r, c);
    std::bernoulli_distribution drop(0.4);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 1; j < c; ++j)
        if (drop(rng)) mask(i, j) = 0.0;
    f = [&mask](std::vector<Var>& v) { return masked_softmax_rows(v[0], mask); };
  } else if (op == "mean") {
    make(r, c);
    f = [](std::vector<Var>& v) { return mean(v[0]); };
  } else if (op == "mse_loss") {
    make(r, c);
    Matrix target = uniform(rng, r, c);
    f = [target](std::vector<Var>& v) { return mse_loss(v[0], target); };
  } else {
    throw std::invalid_argument("unknown op " + op);
  }
  std::vector<Parameter*> ptrs;
  for (auto& q : p) ptrs.push_back(&q);
  Matrix weights;
  LossBuilder loss = [&](Tape& tape) {
    std::vector<Var> vars;
    for (auto& q : p) vars.push_back(tape.parameter(q));
    Var out = f(vars);
    if (weights.size() == 0) weights = uniform(rng, out.rows(), out.cols());
    return sum(hadamard(out, tape.constant(weights)));
  };
  return finite_difference_check(loss, ptrs);
}

// ---- graph convolution and GRU, entry by entry ----

using Rows = std::vector<std::vector<double>>;

inline double sig(double v) { return 1.0 / (1.0 + std::exp(-v)); }

// D^-1/2 (A + I) D^-1/2.
inline Rows a_hat(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<double> deg(n, 1.0);
  for (const Edge& e : g.edges()) {
    deg[e.u] += 1;
    deg[e.v] += 1;
  }
  Rows a(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) a[i][i] = 1.0 / deg[i];
  for (const Edge& e : g.edges()) {
    a[e.u][e.v] = a[e.v][e.u] = 1.0 / std::sqrt(deg[e.u] * deg[e.v]);
  }
  return a;
}

// sigma(A relu(A x W0) W1) for one window column x.
inline Rows graph_conv(const Graph& g, const std::vector<double>& x, const TgcnParams& p) {
  const int n = g.num_nodes();
  const int hid = p.config.hidden, out = p.config.conv_out;
  Rows a = a_hat(g);
  Rows inner(n, std::vector<double>(hid));
  for (int i = 0; i < n; ++i) {
    double ax = 0;
    for (int m = 0; m < n; ++m) ax += a[i][m] * x[m];
    for (int k = 0; k < hid; ++k) inner[i][k] = std::max(0.0, ax * p.w0.value(0, k));
  }
  Rows conv(n, std::vector<double>(out));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < out; ++c) {
      double s = 0;
      for (int m = 0; m < n; ++m) {
        for (int k = 0; k < hid; ++k) s += a[i][m] * inner[m][k] * p.w1.value(k, c);
      }
      conv[i][c] = sig(s);
    }
  }
  return conv;
}

// u, r = sigma(W[f, h] + b); z = tanh(Wz[f, r*h] + bz); h' = u h + (1 - u) z.
inline std::vector<double> gru(const std::vector<double>& f, const std::vector<double>& h,
                               const TgcnParams& p) {
  const int hid = p.config.hidden;
  const int nf = static_cast<int>(f.size());
  auto gate = [&](const Matrix& w, const Matrix& b, const std::vector<double>& second, int j) {
    double s = b(0, j);
    for (int c = 0; c < nf; ++c) s += f[c] * w(c, j);
    for (int k = 0; k < hid; ++k) s += second[k] * w(nf + k, j);
    return s;
  };
  std::vector<double> u(hid), r(hid), rh(hid), out(hid);
  for (int j = 0; j < hid; ++j) {
    u[j] = sig(gate(p.wu.value, p.bu.value, h, j));
    r[j] = sig(gate(p.wr.value, p.br.value, h, j));
  }
  for (int k = 0; k < hid; ++k) rh[k] = r[k] * h[k];
  for (int j = 0; j < hid; ++j) {
    const double z = std::tanh(gate(p.wz.value, p.bz.value, rh, j));
    out[j] = u[j] * h[j] + (1 - u[j]) * z;
  }
  return out;
}

// Random weights and non-zero biases so every term takes part.
inline TgcnParams random_tgcn_params(std::mt19937_64& rng, int hidden, int conv_out,
                                     int horizon = 1) {
  TgcnConfig c;
  c.hidden = hidden;
  c.conv_out = conv_out;
  c.horizon = horizon;
  TgcnParams p = TgcnParams::init(c, rng);
  for (Parameter* q : {&p.bu, &p.br, &p.bz, &p.b_out}) {
    q->value = uniform(rng, 1, q->value.cols(), -0.5, 0.5);
  }
  return p;
}

// Largest deviation of graph_conv and gru_step from the scalar loops on
// one random 3-5 node instance.
inline double eq1_max_deviation(std::mt19937_64& rng) {
  const int n = 3 + static_cast<int>(rng() % 3);
  const int b = 1 + static_cast<int>(rng() % 3);
  Graph g = random_graph(rng, n, 0.5);
  TgcnParams p = random_tgcn_params(rng, 4, 3);
  Matrix x = uniform(rng, n, b, -2, 2);
  Matrix h = uniform(rng, n * b, 4);
  Tape tape;
  Var conv = rtgcn::graph_conv(tape.constant(x), tape.constant(normalized_adjacency(g).matrix), p);
  Var next = gru_step(conv, tape.constant(h), p);
  double worst = 0.0;
  for (int k = 0; k < b; ++k) {
    std::vector<double> col(x.col(k).data(), x.col(k).data() + n);
    Rows ref = graph_conv(g, col, p);
    for (int i = 0; i < n; ++i) {
      const int row = i + n * k;
      std::vector<double> hi(4);
      for (int j = 0; j < 4; ++j) hi[j] = h(row, j);
      for (int c = 0; c < 3; ++c) {
        worst = std::max(worst, std::abs(conv.value()(row, c) - ref[i][c]));
      }
      // The GRU oracle consumes the library's conv row so its own error is
      // isolated from the convolution's.
      std::vector<double> f(3);
      for (int c = 0; c < 3; ++c) f[c] = conv.value()(row, c);
      std::vector<double> h2 = gru(f, hi, p);
      for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(next.value()(row, j) - h2[j]));
    }
  }
  return worst;
}

// ---- whole-model gradient checks on small random instances ----

enum class ModelKind { kTgcn, kGat, kKgim, kPkgimSlp, kPkgimMlp, kPkgimAttn };

inline std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::kTgcn:
      return "tgcn";
    case ModelKind::kGat:
      return "gat";
    case ModelKind::kKgim:
      return "kgim";
    case ModelKind::kPkgimSlp:
      return "pkgim-slp";
    case ModelKind::kPkgimMlp:
      return "pkgim-mlp";
    case ModelKind::kPkgimAttn:
      return "pkgim-attn";
  }
  return "?";
}

inline GradCheckReport model_gradcheck(std::mt19937_64& rng, ModelKind kind) {
  const int n = 3 + static_cast<int>(rng() % 3);
  GradCheckOptions opts;
  opts.seed = rng();
  if (kind == ModelKind::kGat) {
    const int features = 2 + static_cast<int>(rng() % 3);
    GatPredictor model = GatPredictor::init(features, 2 + static_cast<int>(rng() % 3),
                                            1 + static_cast<int>(rng() % 2), rng);
    Matrix x = uniform(rng, n, features);
    Matrix mask = Matrix::Ones(n, n);
    std::bernoulli_distribution drop(0.3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && drop(rng)) mask(i, j) = 0.0;
    Tape t;
    const Matrix target = model.forward(t.constant(x), mask).value() + uniform(rng, n, 1, -0.1, 0.1);
    return finite_difference_check(
        [&](Tape& tape) { return mse_loss(model.forward(tape.constant(x), mask), target); },
        model.parameters(), opts);
  }
  TgcnConfig c;
  c.hidden = 2 + static_cast<int>(rng() % 3);
  c.conv_out = 2 + static_cast<int>(rng() % 2);
  c.history = 2 + static_cast<int>(rng() % 3);
  c.horizon = 1 + static_cast<int>(rng() % 2);
  Graph g = random_graph(rng, n, 0.5);
  Graph k = random_graph(rng, n, 0.4);
  static const Variant kVariants[] = {Variant::kBaseline,  Variant::kBaseline,
                                      Variant::kKgim,      Variant::kPkgimSlp,
                                      Variant::kPkgimMlp,  Variant::kPkgimAttn};
  auto model = make_forecaster(kVariants[static_cast<int>(kind)], g, k, c, rng());
  // Default weights; zero biases are drawn so they take part.
  for (Parameter* q : model->parameters()) {
    if (q->value.isZero(0.0)) q->value = uniform(rng, q->value.rows(), q->value.cols(), -0.3, 0.3);
  }
  SampleSet s;
  s.series = uniform(rng, n, c.history + c.horizon + 6);
  s.history = c.history;
  s.horizon = c.horizon;
  std::vector<int> idx;
  const int b = 1 + static_cast<int>(rng() % 3);
  for (int w = 0; w < b; ++w) idx.push_back(static_cast<int>(rng() % 7));
  Batch batch = make_batch(s, idx);
  // Targets near the prediction keep loss roundoff well below the
  // smallest gradients being compared.
  Matrix target;
  {
    Tape t;
    target = model->forward(t, batch).value();
    target += uniform(rng, target.rows(), target.cols(), -0.05, 0.05);
  }
  return finite_difference_check(
      [&](Tape& tape) { return mse_loss(model->forward(tape, batch), target); },
      model->parameters(), opts);
}

}  // namespace rtgcn::oracle

#endif  // RTGCN_TESTS_ORACLES_HPP_
