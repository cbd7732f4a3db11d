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

#ifndef RTGCN_AUTODIFF_HPP_
#define RTGCN_AUTODIFF_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rtgcn/util.hpp"

namespace rtgcn {

// A trainable matrix living outside any tape. Gradients from every tape
// that references it accumulate into `grad` until zeroed.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;

  Parameter() = default;
  Parameter(std::string n, Matrix v)
      : name(std::move(n)), value(std::move(v)), grad(Matrix::Zero(value.rows(), value.cols())) {}

  void zero_grad() { grad.setZero(value.rows(), value.cols()); }
};

class Tape;

// Handle to a node of a Tape. Cheap to copy; only valid while the tape lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  // Gradient after Tape::backward. Zero-sized when the node needs no gradient.
  const Matrix& grad() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  Tape* tape() const { return tape_; }
  std::size_t index() const { return index_; }

 private:
  friend class Tape;
  Var(Tape* t, std::size_t i) : tape_(t), index_(i) {}

  Tape* tape_ = nullptr;
  std::size_t index_ = 0;
};

// Records dense-matrix operations in creation order. Since every node's
// parents are created before it, a reverse sweep over the node list is a
// valid reverse topological order.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  // Leaf with a tape-owned gradient.
  Var variable(Matrix value);
  // Leaf bound to an external parameter; repeated calls return the same node.
  Var parameter(Parameter& p);

  // Reverse sweep from a 1x1 loss. Gradients accumulate additively across
  // fan-out; bound parameters receive their leaf gradient in `grad`.
  void backward(Var loss);

  std::size_t size() const { return nodes_.size(); }
  const Matrix& value(std::size_t i) const { return nodes_[i].value; }
  const Matrix& grad(std::size_t i) const { return nodes_[i].grad; }
  bool requires_grad(std::size_t i) const { return nodes_[i].requires_grad; }

  // When set (the default), every recorded value is checked for NaN/Inf and
  // a DivergenceError is raised at the producing operation.
  void set_check_finite(bool on) { check_finite_ = on; }
  // With gradients disabled, parameter() records plain constants.
  void set_grad_enabled(bool on) { grad_enabled_ = on; }
  bool grad_enabled() const { return grad_enabled_; }

  // Op plumbing. `parents` must already be on this tape.
  Var record(Matrix value, std::vector<std::size_t> parents, BackwardFn fn, const char* op);
  // Adds `delta` into node i's gradient when that node requires one.
  template <typename Expr>
  void accumulate(std::size_t i, const Expr& delta) {
    Node& n = nodes_[i];
    if (!n.requires_grad) return;
    if (n.grad.size() == 0) {
      n.grad = delta;
    } else {
      n.grad += delta;
    }
  }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    std::vector<std::size_t> parents;
    BackwardFn backward;
    Parameter* param = nullptr;
    bool requires_grad = false;
  };

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, std::size_t> param_index_;
  bool check_finite_ = true;
  bool grad_enabled_ = true;
  bool backward_done_ = false;
};

// Differentiable operations. All operands must live on the same tape;
// shape violations throw ShapeError naming both shapes.
Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var hadamard(Var a, Var b);
Var concat_cols(Var a, Var b);
Var scale(Var a, double c);
// c * a + offset, elementwise.
Var affine(Var a, double c, double offset);
// Adds a 1 x cols row to every row of `a`.
Var add_row(Var a, Var row);
// E(i, j) = col(i) + row(j) for two n x 1 inputs.
Var outer_sum(Var col, Var row);
// Column-major reinterpretation with the same number of entries.
Var reshape(Var a, Eigen::Index rows, Eigen::Index cols);

Var sigmoid(Var x);
Var tanh_act(Var x);
Var relu(Var x);
Var leaky_relu(Var x, double slope = 0.2);
Var elu(Var x, double alpha = 1.0);
Var softmax_rows(Var x);
// Row softmax restricted to entries where mask != 0; masked entries are 0.
// Every row needs at least one unmasked entry.
Var masked_softmax_rows(Var x, const Matrix& mask);

Var sum(Var x);
Var mean(Var x);
// Mean squared error against a constant target.
Var mse_loss(Var pred, const Matrix& target);

// Initialization: uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
template <typename Rng>
Matrix init_uniform(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in, Rng& rng);

}  // namespace rtgcn

#include <random>

namespace rtgcn {

template <typename Rng>
Matrix init_uniform(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = dist(rng);
  return m;
}

}  // namespace rtgcn

#endif  // RTGCN_AUTODIFF_HPP_
