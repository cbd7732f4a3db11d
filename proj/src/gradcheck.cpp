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

#include "rtgcn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "rtgcn/optim.hpp"

namespace rtgcn {

std::string GradCheckReport::summary() const {
  std::ostringstream out;
  out << "max rel err " << max_rel_error << " over " << coordinates_checked << " coords";
  if (!worst_param.empty()) {
    out << " (worst: " << worst_param << "[" << worst_row << "," << worst_col
        << "] analytic=" << worst_analytic << " numeric=" << worst_numeric << ")";
  }
  return out.str();
}

namespace {

double eval(const LossBuilder& loss) {
  Tape tape;
  return loss(tape).value()(0, 0);
}

}  // namespace

GradCheckReport finite_difference_check(const LossBuilder& loss,
                                        const std::vector<Parameter*>& params,
                                        const GradCheckOptions& opts) {
  if (opts.step <= 0) throw std::invalid_argument("finite_difference_check: step must be > 0");
  zero_grads(params);
  {
    Tape tape;
    Var l = loss(tape);
    for (Parameter* p : params) tape.parameter(*p);
    tape.backward(l);
  }
  std::vector<Matrix> analytic;
  for (Parameter* p : params) analytic.push_back(p->grad);
  zero_grads(params);

  std::mt19937_64 rng(opts.seed);
  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    const Eigen::Index total = p.value.size();
    std::vector<Eigen::Index> coords(static_cast<std::size_t>(total));
    std::iota(coords.begin(), coords.end(), 0);
    if (coords.size() > opts.max_coords_per_param) {
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(opts.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    for (Eigen::Index flat : coords) {
      double& x = p.value.data()[flat];
      const double saved = x;
      x = saved + opts.step;
      const double up = eval(loss);
      x = saved - opts.step;
      const double down = eval(loss);
      x = saved;
      const double numeric = (up - down) / (2.0 * opts.step);
      const double a = analytic[k].data()[flat];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      const double rel = std::abs(a - numeric) / denom;
      ++report.coordinates_checked;
      if (rel > report.max_rel_error || report.worst_param.empty()) {
        if (rel >= report.max_rel_error) {
          report.max_rel_error = rel;
          report.worst_param = p.name;
          report.worst_row = flat % p.value.rows();
          report.worst_col = flat / p.value.rows();
          report.worst_analytic = a;
          report.worst_numeric = numeric;
        }
      }
    }
  }
  return report;
}

}  // namespace rtgcn
