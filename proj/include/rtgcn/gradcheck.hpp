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

#ifndef RTGCN_GRADCHECK_HPP_
#define RTGCN_GRADCHECK_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rtgcn/autodiff.hpp"

namespace rtgcn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  Eigen::Index worst_row = -1;
  Eigen::Index worst_col = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t coordinates_checked = 0;

  bool passed(double tol) const { return max_rel_error < tol; }
  std::string summary() const;
};

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  std::size_t max_coords_per_param = 200;
  std::uint64_t seed = 0;
};

// Builds a scalar loss on a fresh tape from the current parameter values.
using LossBuilder = std::function<Var(Tape&)>;

// Compares reverse-mode gradients of `loss` with central differences on a
// random subsample of coordinates. Relative error uses the denominator
// max(|analytic|, |numeric|, 1e-8). Parameter values are restored.
GradCheckReport finite_difference_check(const LossBuilder& loss,
                                        const std::vector<Parameter*>& params,
                                        const GradCheckOptions& opts = {});

}  // namespace rtgcn

#endif  // RTGCN_GRADCHECK_HPP_
