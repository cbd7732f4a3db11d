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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rtgcn/gradcheck.hpp"
#include "rtgcn/tgcn.hpp"
#include "rtgcn/trainer.hpp"
#include "oracles.hpp"

namespace rtgcn {
namespace {

using oracle::random_graph;
using oracle::Rows;
using oracle::sig;

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double spread = 1.0) {
  return oracle::uniform(rng, rows, cols, -spread, spread);
}

TgcnParams random_params(std::mt19937_64& rng, int hidden, int conv_out, int horizon = 1) {
  return oracle::random_tgcn_params(rng, hidden, conv_out, horizon);
}

Rows ref_conv(const Graph& g, const std::vector<double>& x, const TgcnParams& p) {
  return oracle::graph_conv(g, x, p);
}

std::vector<double> ref_gru(const std::vector<double>& f, const std::vector<double>& h,
                            const TgcnParams& p) {
  return oracle::gru(f, h, p);
}

TEST(GraphConvTest, TwoNodeHandExample) {
  TgcnConfig c;
  c.hidden = 1;
  c.conv_out = 1;
  TgcnParams p = TgcnParams::zeros(c);
  p.w0.value.setOnes();
  p.w1.value.setOnes();
  Graph g = new_graph(2, {{0, 1}});
  Tape tape;
  Matrix x(2, 1);
  x << 1, 0;
  Var y = graph_conv(tape.constant(x), tape.constant(normalized_adjacency(g).matrix), p);
  EXPECT_NEAR(y.value()(0, 0), 0.62246, 1e-5);
  EXPECT_NEAR(y.value()(1, 0), 0.62246, 1e-5);
  EXPECT_DOUBLE_EQ(y.value()(0, 0), sig(0.5));
}

TEST(GraphConvTest, ZeroInnerWeightsGiveHalf) {
  std::mt19937_64 rng(1);
  TgcnParams p = random_params(rng, 4, 3);
  p.w0.value.setZero();
  Graph g = random_graph(rng, 5, 0.5);
  Tape tape;
  Var y = graph_conv(tape.constant(random_matrix(rng, 5, 2)),
                     tape.constant(normalized_adjacency(g).matrix), p);
  EXPECT_EQ(y.rows(), 10);
  EXPECT_EQ(y.cols(), 3);
  EXPECT_TRUE((y.value().array() == 0.5).all());
}

TEST(GraphConvTest, IsolatedNodeReducesToDenseLayer) {
  std::mt19937_64 rng(2);
  TgcnParams p = random_params(rng, 3, 2);
  Tape tape;
  Matrix x(1, 1);
  x << 0.7;
  Var y = graph_conv(tape.constant(x), tape.constant(Matrix::Identity(1, 1)), p);
  for (int c = 0; c < 2; ++c) {
    double s = 0;
    for (int k = 0; k < 3; ++k) s += std::max(0.0, 0.7 * p.w0.value(0, k)) * p.w1.value(k, c);
    EXPECT_NEAR(y.value()(0, c), sig(s), 1e-15);
  }
}

TEST(GraphConvTest, MatchesScalarOracleAndStaysInOpenUnitInterval) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 3;
    const int b = 1 + trial % 4;
    Graph g = random_graph(rng, n, 0.5);
    TgcnParams p = random_params(rng, 4, 3);
    Matrix x = random_matrix(rng, n, b, 2.0);
    Tape tape;
    Var y = graph_conv(tape.constant(x), tape.constant(normalized_adjacency(g).matrix), p);
    ASSERT_EQ(y.rows(), n * b);
    for (int k = 0; k < b; ++k) {
      std::vector<double> col(x.col(k).data(), x.col(k).data() + n);
      Rows ref = ref_conv(g, col, p);
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) {
          const double v = y.value()(i + n * k, c);
          EXPECT_NEAR(v, ref[i][c], 1e-12);
          EXPECT_GT(v, 0.0);
          EXPECT_LT(v, 1.0);
        }
      }
    }
  }
}

TEST(GruStepTest, ZeroWeightsClosedForms) {
  TgcnConfig c;
  c.hidden = 3;
  c.conv_out = 2;
  TgcnParams p = TgcnParams::zeros(c);
  std::mt19937_64 rng(4);
  Tape tape;
  Var conv = tape.constant(random_matrix(rng, 4, 2));
  Var h0 = gru_step(conv, tape.constant(Matrix::Zero(4, 3)), p);
  EXPECT_TRUE(h0.value().isZero(0.0));
  Matrix h = random_matrix(rng, 4, 3);
  Var h1 = gru_step(conv, tape.constant(h), p);
  EXPECT_TRUE(h1.value().isApprox(0.5 * h, 1e-15));
}

TEST(Eq1OracleTest, RandomInstancesWithinTolerance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) EXPECT_LT(oracle::eq1_max_deviation(rng), 1e-12);
}

TEST(GruStepTest, MatchesScalarOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 3 + trial % 3;
    TgcnParams p = random_params(rng, 4, 3);
    Matrix f = random_matrix(rng, rows, 3);
    Matrix h = random_matrix(rng, rows, 4);
    Tape tape;
    Var out = gru_step(tape.constant(f), tape.constant(h), p);
    for (int i = 0; i < rows; ++i) {
      std::vector<double> fi(3), hi(4);
      for (int c = 0; c < 3; ++c) fi[c] = f(i, c);
      for (int k = 0; k < 4; ++k) hi[k] = h(i, k);
      std::vector<double> ref = ref_gru(fi, hi, p);
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(out.value()(i, k), ref[k], 1e-12);
    }
  }
}

TEST(GruStepTest, SaturatedUpdateGate) {
  std::mt19937_64 rng(6);
  TgcnParams p = random_params(rng, 3, 2);
  Matrix f = random_matrix(rng, 4, 2);
  Matrix h = random_matrix(rng, 4, 3);
  {
    p.bu.value.setConstant(60.0);
    Tape tape;
    Var out = gru_step(tape.constant(f), tape.constant(h), p);
    EXPECT_EQ(out.value(), h);
  }
  {
    p.bu.value.setConstant(-800.0);
    Tape tape;
    Var out = gru_step(tape.constant(f), tape.constant(h), p);
    Matrix r = ((Matrix(4, 5) << f, h).finished() * p.wr.value).rowwise() +
               p.br.value.row(0);
    r = r.unaryExpr([](double v) { return sig(v); });
    Matrix z = ((Matrix(4, 5) << f, r.cwiseProduct(h)).finished() * p.wz.value).rowwise() +
               p.bz.value.row(0);
    z = z.array().tanh().matrix();
    EXPECT_TRUE(out.value().isApprox(z, 1e-14));
  }
}

TEST(ForwardTest, ZeroParametersPredictZero) {
  TgcnConfig c;
  c.hidden = 5;
  c.conv_out = 4;
  TgcnParams p = TgcnParams::zeros(c);
  std::mt19937_64 rng(7);
  Graph g = random_graph(rng, 6, 0.4);
  Matrix y = forward(random_matrix(rng, 6, 10), normalized_adjacency(g), p);
  EXPECT_EQ(y.rows(), 6);
  EXPECT_EQ(y.cols(), 1);
  EXPECT_TRUE(y.isZero(0.0));
}

TEST(ForwardTest, MatchesScalarRecurrence) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    Graph g = random_graph(rng, n, 0.6);
    TgcnParams p = random_params(rng, 4, 3, 2);
    Matrix window = random_matrix(rng, n, 6);
    Matrix y = forward(window, normalized_adjacency(g), p);
    Rows h(n, std::vector<double>(4, 0.0));
    for (int l = 0; l < 6; ++l) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = window(i, l);
      Rows conv = ref_conv(g, x, p);
      for (int i = 0; i < n; ++i) h[i] = ref_gru(conv[i], h[i], p);
    }
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < 2; ++t) {
        double s = p.b_out.value(0, t);
        for (int k = 0; k < 4; ++k) s += h[i][k] * p.w_out.value(k, t);
        EXPECT_NEAR(y(i, t), s, 1e-12);
      }
    }
  }
}

TEST(ForwardTest, NodePermutationEquivariance) {
  std::mt19937_64 rng(9);
  const int n = 7;
  Graph g = random_graph(rng, n, 0.4);
  TgcnParams p = random_params(rng, 6, 5);
  Matrix window = random_matrix(rng, n, 8);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> moved;
  for (const Edge& e : g.edges()) moved.emplace_back(perm[e.u], perm[e.v]);
  Graph pg = new_graph(n, moved);
  Matrix pw(n, window.cols());
  for (int i = 0; i < n; ++i) pw.row(perm[i]) = window.row(i);
  Matrix y = forward(window, normalized_adjacency(g), p);
  Matrix py = forward(pw, normalized_adjacency(pg), p);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(py(perm[i], 0), y(i, 0), 1e-13);
  // Deterministic on repeat.
  EXPECT_EQ(forward(window, normalized_adjacency(g), p), y);
}

TEST(ForwardTest, EndToEndGradientCheck) {
  std::mt19937_64 rng(10);
  Graph g = new_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
  TgcnConfig c;
  c.hidden = 4;
  c.conv_out = 3;
  c.history = 4;
  TgcnForecaster model(g, c, 11);
  for (Parameter* q : model.parameters()) {
    if (q->value.isZero(0.0)) q->value = random_matrix(rng, q->value.rows(), q->value.cols(), 0.3);
  }
  SampleSet s;
  s.series = random_matrix(rng, 5, 12);
  s.history = 4;
  s.horizon = 1;
  s.train = {0, 8};
  s.test = {0, 8};
  std::vector<int> idx = {0, 3, 5};
  Batch batch = make_batch(s, idx);
  auto loss = [&](Tape& t) { return mse_loss(model.forward(t, batch), batch.target); };
  GradCheckReport r = finite_difference_check(loss, model.parameters());
  EXPECT_TRUE(r.passed(1e-4)) << r.summary();
  EXPECT_GT(r.coordinates_checked, 50u);
}

TEST(BatchTest, LayoutIsSampleMajor) {
  SampleSet s;
  s.series = Matrix(3, 8);
  for (int i = 0; i < 3; ++i) {
    for (int t = 0; t < 8; ++t) s.series(i, t) = 10 * i + t;
  }
  s.history = 3;
  s.horizon = 2;
  s.train = {0, 4};
  s.test = {0, 4};
  std::vector<int> idx = {2, 0};
  Batch b = make_batch(s, idx);
  ASSERT_EQ(b.steps.size(), 3u);
  EXPECT_EQ(b.size, 2);
  EXPECT_EQ(b.num_nodes, 3);
  EXPECT_EQ(b.steps[1](2, 0), 23);  // window 2, step 1, node 2
  EXPECT_EQ(b.steps[2](1, 1), 12);  // window 0, step 2, node 1
  ASSERT_EQ(b.target.rows(), 6);
  EXPECT_EQ(b.target(1, 0), 15);  // window 2 target starts at column 5
  EXPECT_EQ(b.target(3 + 2, 1), 24);
  Matrix un = unstack_prediction(b.target, 3, 2);
  EXPECT_EQ(un.cols(), 4);
  EXPECT_EQ(un(2, 1), 26);
  EXPECT_EQ(un(0, 2), 3);
}

TEST(BatchTest, BatchedForwardMatchesSingleWindows) {
  std::mt19937_64 rng(12);
  Graph g = random_graph(rng, 5, 0.5);
  TgcnConfig c;
  c.hidden = 4;
  c.conv_out = 3;
  c.history = 5;
  TgcnForecaster model(g, c, 3);
  SampleSet s;
  s.series = random_matrix(rng, 5, 20);
  s.history = 5;
  s.horizon = 1;
  std::vector<int> idx = {1, 7, 4, 14};
  Batch b = make_batch(s, idx);
  Tape tape;
  Matrix y = unstack_prediction(model.forward(tape, b).value(), 5, 4);
  for (int k = 0; k < 4; ++k) {
    Matrix single = forward(s.input(idx[k]), model.adjacency(), model.params());
    EXPECT_TRUE(y.col(k).isApprox(single, 1e-13));
  }
}

TEST(RmseTest, Examples) {
  Matrix a(1, 2), t(1, 2);
  a << 0, 0;
  t << 3, 4;
  EXPECT_NEAR(rmse(a, t), 3.53553, 1e-5);
  EXPECT_DOUBLE_EQ(rmse(a, t), std::sqrt(12.5));
  Matrix x = Matrix::Random(4, 5);
  EXPECT_EQ(rmse(x, x), 0.0);
  EXPECT_NEAR(rmse(x.array() + 0.25, x), 0.25, 1e-15);
  EXPECT_THROW(rmse(Matrix::Zero(2, 2), Matrix::Zero(2, 3)), ShapeError);
}

TEST(VariantTest, NamesRoundTrip) {
  for (Variant v : all_variants()) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("gcn"), InputError);
  EXPECT_FALSE(uses_knowledge_graph(Variant::kBaseline));
  EXPECT_TRUE(uses_knowledge_graph(Variant::kPkgimAttn));
}

}  // namespace
}  // namespace rtgcn
