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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rtgcn/ieee118.hpp"
#include "rtgcn/resilient.hpp"
#include "rtgcn/trainer.hpp"

namespace rtgcn {
namespace {

TgcnConfig small_config() {
  TgcnConfig c;
  c.hidden = 6;
  c.conv_out = 6;
  c.history = 5;
  return c;
}

SampleSet noisy_samples(int n, int t, std::uint64_t seed, int history = 5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.05);
  TimeSeriesDataset d;
  d.values.resize(n, t);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < t; ++k) d.values(i, k) = std::sin(0.15 * k + i) + noise(rng);
  }
  d.scale = max_abs_scale(d.values);
  return window(d, history, 1);
}

Graph path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return new_graph(n, e);
}

TrainConfig config(int epochs, std::uint64_t seed = 1) {
  TrainConfig c;
  c.epochs = epochs;
  c.batch_size = 16;
  c.learning_rate = 1e-2;
  c.patience = 0;
  c.seed = seed;
  return c;
}

TEST(TrainTest, SameSeedSameHistory) {
  SampleSet s = noisy_samples(5, 120, 1);
  TgcnForecaster a(path(5), small_config(), 3), b(path(5), small_config(), 3);
  TrainResult ra = train(a, s, config(4));
  TrainResult rb = train(b, s, config(4));
  EXPECT_EQ(ra.train_loss, rb.train_loss);
  EXPECT_EQ(ra.validation_rmse, rb.validation_rmse);

  TgcnForecaster c(path(5), small_config(), 3);
  TrainResult rc = train(c, s, config(4, 2));
  EXPECT_NE(ra.train_loss, rc.train_loss);
}

TEST(TrainTest, ConstantSeriesConverges) {
  TimeSeriesDataset d;
  d.values = Matrix::Constant(4, 80, 0.3);
  d.scale = max_abs_scale(d.values);
  SampleSet s = window(d, 5, 1);
  TgcnForecaster m(path(4), small_config(), 5);
  TrainConfig c = config(50);
  c.learning_rate = 1e-2;
  TrainResult r = train(m, s, c);
  EXPECT_LE(r.epochs_run, 50);
  EXPECT_LT(r.train_loss.back(), 1e-4);
  EXPECT_LT(evaluate_rmse(m, s, s.test), 0.3 * 1e-2);
}

TEST(TrainTest, StepsFollowWindowCapAndBatchSize) {
  SampleSet s = noisy_samples(4, 200, 2);
  TgcnForecaster m(path(4), small_config(), 5);
  TrainConfig c = config(3);
  c.max_train_windows = 40;
  c.batch_size = 16;
  TrainResult r = train(m, s, c);
  EXPECT_EQ(r.optimizer_steps, 3 * 3);
  EXPECT_EQ(r.train_loss.size(), 3u);
  EXPECT_EQ(r.validation_rmse.size(), 3u);
}

TEST(TrainTest, EarlyStoppingRestoresBestWeights) {
  SampleSet s = noisy_samples(5, 160, 3);
  TgcnForecaster m(path(5), small_config(), 7);
  TrainConfig c = config(200);
  c.learning_rate = 0.05;
  c.patience = 3;
  TrainResult r = train(m, s, c);
  ASSERT_LT(r.epochs_run, 200) << "fixture no longer triggers early stopping";
  EXPECT_EQ(r.epochs_run, r.best_epoch + 1 + c.patience);
  const double restored =
      rmse(predict(m, s, s.validation), targets(s, s.validation));
  EXPECT_EQ(restored, r.validation_rmse[r.best_epoch]);
  for (double v : r.validation_rmse) EXPECT_GE(v, restored);
}

TEST(TrainTest, DivergenceNamesSeedAndEpoch) {
  SampleSet s = noisy_samples(4, 60, 4);
  TgcnForecaster m(path(4), small_config(), 1);
  TrainConfig c = config(5, 99);
  c.learning_rate = 1e200;
  try {
    train(m, s, c);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("seed 99"), std::string::npos) << msg;
    EXPECT_NE(msg.find("epoch"), std::string::npos) << msg;
  }
}

TEST(TrainTest, RejectsEmptySplitAndBadConfig) {
  SampleSet s = noisy_samples(4, 60, 5);
  TgcnForecaster m(path(4), small_config(), 1);
  TrainConfig c = config(1);
  c.batch_size = 0;
  EXPECT_THROW(train(m, s, c), InputError);
  s.train = {0, 0};
  EXPECT_THROW(train(m, s, config(1)), InputError);
}

TEST(PredictTest, LayoutAndDenormalizedRmse) {
  SampleSet s = noisy_samples(4, 60, 6);
  TgcnForecaster m(path(4), small_config(), 1);
  Matrix p = predict(m, s, s.test, 3);
  Matrix t = targets(s, s.test);
  ASSERT_EQ(p.rows(), 4);
  ASSERT_EQ(p.cols(), s.test.size());
  // Batch size must not change the result.
  EXPECT_TRUE(p.isApprox(predict(m, s, s.test, 64), 1e-14));
  EXPECT_EQ(t.col(0), s.target(s.test.begin));
  EXPECT_NEAR(evaluate_rmse(m, s, s.test), rmse(p, t) * s.scale, 1e-15);
}

// A moving average over 10 epochs smooths out shuffle noise.
TEST(TrainTest, DeskLossMovingAverageNonIncreasing) {
  PowerNetwork net = ieee118_network();
  TimeSeriesDataset d = generate_dataset(net, synth_load_profile(118, 2000, 7, 1.0, 0.05), 30.0);
  SampleSet s = window(d, 10, 1);
  TgcnConfig mc;
  mc.hidden = 16;
  mc.conv_out = 16;
  TgcnForecaster m(net.graph, mc, 7);
  TrainConfig c;
  c.epochs = 20;
  c.patience = 0;
  c.max_train_windows = 160;
  c.seed = 7;
  TrainResult r = train(m, s, c);
  ASSERT_EQ(r.train_loss.size(), 20u);
  double prev = INFINITY;
  for (std::size_t k = 0; k + 10 <= r.train_loss.size(); ++k) {
    double avg = 0;
    for (std::size_t j = k; j < k + 10; ++j) avg += r.train_loss[j] / 10;
    EXPECT_LE(avg, prev) << "window starting at epoch " << k;
    prev = avg;
  }
}

}  // namespace
}  // namespace rtgcn
