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

#ifndef RTGCN_OPTIM_HPP_
#define RTGCN_OPTIM_HPP_

#include <vector>

#include "rtgcn/autodiff.hpp"

namespace rtgcn {

struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step_count = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;
};

// One bias-corrected Adam update over `params`, then zeroes their gradients.
// Moments are allocated on the first call.
void adam_step(const std::vector<Parameter*>& params, AdamState& state);

void zero_grads(const std::vector<Parameter*>& params);

}  // namespace rtgcn

#endif  // RTGCN_OPTIM_HPP_
