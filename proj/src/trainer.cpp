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

#include "rtgcn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rtgcn/optim.hpp"

namespace rtgcn {

double rmse(const Matrix& predictions, const Matrix& targets) {
  if (predictions.rows() != targets.rows() || predictions.cols() != targets.cols()) {
    throw ShapeError("rmse: shape mismatch " + shape_string(predictions) + " vs " +
                     shape_string(targets));
  }
  if (predictions.size() == 0) throw ShapeError("rmse: empty input");
  return std::sqrt((predictions - targets).squaredNorm() / static_cast<double>(predictions.size()));
}

Matrix predict(Forecaster& model, const SampleSet& samples, IndexRange range, int batch_size) {
  const int n = samples.num_nodes();
  const int h = samples.horizon;
  Matrix out(n, static_cast<Eigen::Index>(range.size()) * h);
  std::vector<int> windows;
  for (int start = range.begin; start < range.end; start += batch_size) {
    const int stop = std::min(range.end, start + batch_size);
    windows.resize(stop - start);
    std::iota(windows.begin(), windows.end(), start);
    Batch batch = make_batch(samples, windows);
    Tape tape;
    tape.set_grad_enabled(false);
    Var y = model.forward(tape, batch);
    Matrix normalized =
        (y.value().array() - model.target_offset()) / model.target_scale();
    out.middleCols(static_cast<Eigen::Index>(start - range.begin) * h,
                   static_cast<Eigen::Index>(stop - start) * h) =
        unstack_prediction(normalized, n, stop - start);
  }
  return out;
}

Matrix targets(const SampleSet& samples, IndexRange range) {
  const int h = samples.horizon;
  Matrix out(samples.num_nodes(), static_cast<Eigen::Index>(range.size()) * h);
  for (int w = range.begin; w < range.end; ++w) {
    out.middleCols(static_cast<Eigen::Index>(w - range.begin) * h, h) = samples.target(w);
  }
  return out;
}

double evaluate_rmse(Forecaster& model, const SampleSet& samples, IndexRange range) {
  if (range.size() <= 0) throw InputError("evaluate_rmse: empty window range");
  Matrix pred = predict(model, samples, range);
  return rmse(pred * samples.scale, targets(samples, range) * samples.scale);
}

TrainResult train(Forecaster& model, const SampleSet& samples, const TrainConfig& config) {
  if (samples.train.size() <= 0) throw InputError("train: empty training split");
  if (config.batch_size < 1 || config.epochs < 0) throw InputError("train: bad config");

  std::vector<int> order;
  int first = samples.train.begin;
  if (config.max_train_windows > 0) {
    first = std::max(first, samples.train.end - config.max_train_windows);
  }
  for (int w = first; w < samples.train.end; ++w) order.push_back(w);

  std::vector<Parameter*> params = model.parameters();
  zero_grads(params);
  AdamState adam;
  adam.learning_rate = config.learning_rate;
  std::mt19937_64 rng(config.seed);

  TrainResult result;
  std::vector<Matrix> best;
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  const bool has_val = samples.validation.size() > 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      std::span<const int> windows(order.data() + start, stop - start);
      Batch batch = make_batch(samples, windows);
      batch.target = batch.target.array() * model.target_scale() + model.target_offset();
      Tape tape;
      Var loss;
      try {
        loss = mse_loss(model.forward(tape, batch), batch.target);
      } catch (const DivergenceError& e) {
        throw DivergenceError(std::string(e.what()) + " (seed " + std::to_string(config.seed) +
                              ", epoch " + std::to_string(epoch) + ")");
      }
      const double l = loss.value()(0, 0);
      if (!std::isfinite(l)) {
        throw DivergenceError("non-finite training loss (seed " + std::to_string(config.seed) +
                              ", epoch " + std::to_string(epoch) + ")");
      }
      tape.backward(loss);
      adam_step(params, adam);
      loss_sum += l;
      ++batches;
    }
    result.train_loss.push_back(loss_sum / batches);
    result.epochs_run = epoch + 1;
    result.optimizer_steps = adam.step_count;

    if (has_val) {
      const double val = rmse(predict(model, samples, samples.validation),
                              targets(samples, samples.validation));
      result.validation_rmse.push_back(val);
      if (val < best_val) {
        best_val = val;
        result.best_epoch = epoch;
        since_best = 0;
        best.clear();
        for (Parameter* p : params) best.push_back(p->value);
      } else if (config.patience > 0 && ++since_best >= config.patience) {
        break;
      }
    } else {
      result.best_epoch = epoch;
    }
  }
  if (!best.empty()) {
    for (std::size_t k = 0; k < params.size(); ++k) params[k]->value = best[k];
  }
  return result;
}

}  // namespace rtgcn
