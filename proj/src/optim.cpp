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

#include "rtgcn/optim.hpp"

#include <cmath>

namespace rtgcn {

void zero_grads(const std::vector<Parameter*>& params) {
  for (Parameter* p : params) p->zero_grad();
}

void adam_step(const std::vector<Parameter*>& params, AdamState& state) {
  if (state.first_moment.empty() && state.step_count == 0) {
    for (Parameter* p : params) {
      state.first_moment.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
      state.second_moment.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
    }
  }
  if (state.first_moment.size() != params.size() || state.second_moment.size() != params.size()) {
    throw ShapeError("adam_step: optimizer state tracks " +
                     std::to_string(state.first_moment.size()) + " parameters, got " +
                     std::to_string(params.size()));
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    const Parameter& p = *params[k];
    const Matrix& m = state.first_moment[k];
    if (m.rows() != p.value.rows() || m.cols() != p.value.cols() ||
        p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols()) {
      throw ShapeError("adam_step: shape mismatch for parameter '" + p.name + "' (" +
                       shape_string(p.value) + " vs moment " + shape_string(m) + ")");
    }
  }

  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    Matrix& m = state.first_moment[k];
    Matrix& v = state.second_moment[k];
    m = state.beta1 * m + (1.0 - state.beta1) * p.grad;
    v = state.beta2 * v + (1.0 - state.beta2) * p.grad.cwiseAbs2();
    p.value.array() -= state.learning_rate * (m.array() / c1) /
                       ((v.array() / c2).sqrt() + state.epsilon);
    p.zero_grad();
  }
}

}  // namespace rtgcn
