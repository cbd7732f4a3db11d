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

#ifndef RTGCN_TRAINER_HPP_
#define RTGCN_TRAINER_HPP_

#include <cstdint>
#include <vector>

#include "rtgcn/datagen.hpp"
#include "rtgcn/tgcn.hpp"

namespace rtgcn {

struct TrainConfig {
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 1e-3;
  // Early stopping on validation RMSE; 0 disables it.
  int patience = 10;
  // Use only the most recent N training windows (0 = all).
  int max_train_windows = 0;
  std::uint64_t seed = 0;
};

struct TrainResult {
  std::vector<double> train_loss;      // mean batch MSE per epoch (model space)
  std::vector<double> validation_rmse;  // normalized units, empty without a split
  int epochs_run = 0;
  int best_epoch = -1;
  long optimizer_steps = 0;
};

// Minimizes MSE over shuffled mini-batches with Adam. Deterministic for a
// fixed seed. When a validation split exists, the best-validation weights
// are restored at the end. Throws DivergenceError on a non-finite loss.
TrainResult train(Forecaster& model, const SampleSet& samples, const TrainConfig& config);

// Predictions for windows [range.begin, range.end) in normalized units,
// N x (windows * horizon), window-major.
Matrix predict(Forecaster& model, const SampleSet& samples, IndexRange range,
               int batch_size = 64);
// Matching targets, same layout as predict().
Matrix targets(const SampleSet& samples, IndexRange range);

// sqrt(mean squared error) over all entries.
double rmse(const Matrix& predictions, const Matrix& targets);

// Test-split RMSE in de-normalized (radian) units.
double evaluate_rmse(Forecaster& model, const SampleSet& samples, IndexRange range);

}  // namespace rtgcn

#endif  // RTGCN_TRAINER_HPP_
