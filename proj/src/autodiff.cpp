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

#include "rtgcn/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace rtgcn {
namespace {

#if defined(__GLIBC__)
// Tape values are mostly a few hundred KB; served by mmap they cost a page
// fault storm per training step.
const bool kAllocatorTuned = [] {
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 512 << 20);
  return true;
}();
#endif

}  // namespace

const Matrix& Var::value() const { return tape_->value(index_); }
const Matrix& Var::grad() const { return tape_->grad(index_); }

Var Tape::record(Matrix value, std::vector<std::size_t> parents, BackwardFn fn,
                 const char* op) {
  if (check_finite_ && !value.allFinite()) {
    throw DivergenceError(std::string("non-finite value produced by ") + op);
  }
  Node n;
  n.value = std::move(value);
  for (std::size_t p : parents) n.requires_grad = n.requires_grad || nodes_[p].requires_grad;
  n.parents = std::move(parents);
  if (n.requires_grad) n.backward = std::move(fn);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Tape::constant(Matrix value) { return record(std::move(value), {}, nullptr, "constant"); }

Var Tape::variable(Matrix value) {
  Var v = record(std::move(value), {}, nullptr, "variable");
  nodes_[v.index_].requires_grad = true;
  return v;
}

Var Tape::parameter(Parameter& p) {
  if (auto it = param_index_.find(&p); it != param_index_.end()) return Var(this, it->second);
  Var v = record(p.value, {}, nullptr, p.name.c_str());
  if (grad_enabled_) {
    nodes_[v.index_].requires_grad = true;
    nodes_[v.index_].param = &p;
  }
  param_index_.emplace(&p, v.index_);
  return v;
}

void Tape::backward(Var loss) {
  if (loss.tape_ != this) throw std::invalid_argument("backward: loss belongs to another tape");
  const Matrix& lv = nodes_[loss.index_].value;
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw ShapeError("backward requires a 1x1 loss, got " + shape_string(lv));
  }
  if (backward_done_) throw std::logic_error("backward called twice on the same tape");
  backward_done_ = true;
  if (!nodes_[loss.index_].requires_grad) return;
  nodes_[loss.index_].grad = Matrix::Ones(1, 1);
  for (std::size_t i = loss.index_ + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || n.grad.size() == 0) continue;
    if (n.backward) n.backward(*this, i);
  }
  for (Node& n : nodes_) {
    if (n.param == nullptr || n.grad.size() == 0) continue;
    if (n.param->grad.rows() != n.grad.rows() || n.param->grad.cols() != n.grad.cols()) {
      n.param->grad = n.grad;
    } else {
      n.param->grad += n.grad;
    }
  }
}

namespace {

void same_tape(Var a, Var b, const char* op) {
  if (a.tape() != b.tape() || a.tape() == nullptr) {
    throw std::invalid_argument(std::string(op) + ": operands live on different tapes");
  }
}

[[noreturn]] void shape_fail(const char* op, const Matrix& a, const Matrix& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_string(a) + " and " +
                   shape_string(b));
}

void same_shape(Var a, Var b, const char* op) {
  same_tape(a, b, op);
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_fail(op, a.value(), b.value());
}

double stable_sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Var matmul(Var a, Var b) {
  same_tape(a, b, "matmul");
  if (a.cols() != b.rows()) shape_fail("matmul", a.value(), b.value());
  Matrix out;
  out.noalias() = a.value() * b.value();
  const std::size_t ia = a.index(), ib = b.index();
  return a.tape()->record(
      std::move(out), {ia, ib},
      [ia, ib](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        if (t.requires_grad(ia)) {
          Matrix da;
          da.noalias() = g * t.value(ib).transpose();
          t.accumulate(ia, da);
        }
        if (t.requires_grad(ib)) {
          Matrix db;
          db.noalias() = t.value(ia).transpose() * g;
          t.accumulate(ib, db);
        }
      },
      "matmul");
}

Var add(Var a, Var b) {
  same_shape(a, b, "add");
  const std::size_t ia = a.index(), ib = b.index();
  return a.tape()->record(
      a.value() + b.value(), {ia, ib},
      [ia, ib](Tape& t, std::size_t self) {
        t.accumulate(ia, t.grad(self));
        t.accumulate(ib, t.grad(self));
      },
      "add");
}

Var sub(Var a, Var b) {
  same_shape(a, b, "sub");
  const std::size_t ia = a.index(), ib = b.index();
  return a.tape()->record(
      a.value() - b.value(), {ia, ib},
      [ia, ib](Tape& t, std::size_t self) {
        t.accumulate(ia, t.grad(self));
        t.accumulate(ib, -t.grad(self));
      },
      "sub");
}

Var hadamard(Var a, Var b) {
  same_shape(a, b, "hadamard");
  const std::size_t ia = a.index(), ib = b.index();
  return a.tape()->record(
      a.value().cwiseProduct(b.value()), {ia, ib},
      [ia, ib](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        t.accumulate(ia, g.cwiseProduct(t.value(ib)));
        t.accumulate(ib, g.cwiseProduct(t.value(ia)));
      },
      "hadamard");
}

Var concat_cols(Var a, Var b) {
  same_tape(a, b, "concat_cols");
  if (a.rows() != b.rows()) shape_fail("concat_cols", a.value(), b.value());
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a.value(), b.value();
  const std::size_t ia = a.index(), ib = b.index();
  const Eigen::Index ca = a.cols(), cb = b.cols();
  return a.tape()->record(
      std::move(out), {ia, ib},
      [ia, ib, ca, cb](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        t.accumulate(ia, g.leftCols(ca));
        t.accumulate(ib, g.rightCols(cb));
      },
      "concat_cols");
}

Var scale(Var a, double c) { return affine(a, c, 0.0); }

Var affine(Var a, double c, double offset) {
  const std::size_t ia = a.index();
  Matrix out = (c * a.value()).array() + offset;
  return a.tape()->record(
      std::move(out), {ia},
      [ia, c](Tape& t, std::size_t self) { t.accumulate(ia, c * t.grad(self)); }, "affine");
}

Var add_row(Var a, Var row) {
  same_tape(a, row, "add_row");
  if (row.rows() != 1 || row.cols() != a.cols()) shape_fail("add_row", a.value(), row.value());
  const std::size_t ia = a.index(), ir = row.index();
  Matrix out = a.value().rowwise() + row.value().row(0);
  return a.tape()->record(
      std::move(out), {ia, ir},
      [ia, ir](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        t.accumulate(ia, g);
        if (t.requires_grad(ir)) t.accumulate(ir, g.colwise().sum());
      },
      "add_row");
}

Var outer_sum(Var col, Var row) {
  same_tape(col, row, "outer_sum");
  if (col.cols() != 1 || row.cols() != 1) shape_fail("outer_sum", col.value(), row.value());
  const std::size_t ic = col.index(), ir = row.index();
  const Eigen::Index n = col.rows(), m = row.rows();
  Matrix out(n, m);
  for (Eigen::Index j = 0; j < m; ++j) out.col(j) = col.value().col(0).array() + row.value()(j, 0);
  return col.tape()->record(
      std::move(out), {ic, ir},
      [ic, ir](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        if (t.requires_grad(ic)) t.accumulate(ic, g.rowwise().sum());
        if (t.requires_grad(ir)) t.accumulate(ir, g.colwise().sum().transpose());
      },
      "outer_sum");
}

Var reshape(Var a, Eigen::Index rows, Eigen::Index cols) {
  if (rows * cols != a.value().size()) {
    throw ShapeError("reshape: cannot view " + shape_string(a.value()) + " as " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  const std::size_t ia = a.index();
  const Eigen::Index r0 = a.rows(), c0 = a.cols();
  Matrix out = Eigen::Map<const Matrix>(a.value().data(), rows, cols);
  return a.tape()->record(
      std::move(out), {ia},
      [ia, r0, c0](Tape& t, std::size_t self) {
        const Matrix& g = t.grad(self);
        t.accumulate(ia, Eigen::Map<const Matrix>(g.data(), r0, c0));
      },
      "reshape");
}

Var sigmoid(Var x) {
  const std::size_t ix = x.index();
  Matrix y = x.value().unaryExpr([](double v) { return stable_sigmoid(v); });
  return x.tape()->record(
      std::move(y), {ix},
      [ix](Tape& t, std::size_t self) {
        const Matrix& y = t.value(self);
        t.accumulate(ix, t.grad(self).cwiseProduct(y.cwiseProduct((1.0 - y.array()).matrix())));
      },
      "sigmoid");
}

Var tanh_act(Var x) {
  const std::size_t ix = x.index();
  Matrix y = x.value().array().tanh().matrix();
  return x.tape()->record(
      std::move(y), {ix},
      [ix](Tape& t, std::size_t self) {
        const Matrix& y = t.value(self);
        t.accumulate(ix, (t.grad(self).array() * (1.0 - y.array().square())).matrix());
      },
      "tanh");
}

Var relu(Var x) {
  const std::size_t ix = x.index();
  Matrix y = x.value().cwiseMax(0.0);
  return x.tape()->record(
      std::move(y), {ix},
      [ix](Tape& t, std::size_t self) {
        const Matrix& in = t.value(ix);
        t.accumulate(ix, (in.array() > 0.0).select(t.grad(self), 0.0).matrix());
      },
      "relu");
}

Var leaky_relu(Var x, double slope) {
  const std::size_t ix = x.index();
  Matrix y = (x.value().array() > 0.0).select(x.value(), slope * x.value()).matrix();
  return x.tape()->record(
      std::move(y), {ix},
      [ix, slope](Tape& t, std::size_t self) {
        const Matrix& in = t.value(ix);
        const Matrix& g = t.grad(self);
        t.accumulate(ix, (in.array() > 0.0).select(g, slope * g).matrix());
      },
      "leaky_relu");
}

Var elu(Var x, double alpha) {
  const std::size_t ix = x.index();
  Matrix y = x.value().unaryExpr(
      [alpha](double v) { return v > 0.0 ? v : alpha * std::expm1(v); });
  return x.tape()->record(
      std::move(y), {ix},
      [ix, alpha](Tape& t, std::size_t self) {
        const Matrix& in = t.value(ix);
        const Matrix& y = t.value(self);
        Matrix d = (in.array() > 0.0).select(Matrix::Ones(in.rows(), in.cols()), (y.array() + alpha).matrix());
        t.accumulate(ix, t.grad(self).cwiseProduct(d));
      },
      "elu");
}

namespace {

Matrix row_softmax(const Matrix& x, const Matrix* mask) {
  Matrix y = Matrix::Zero(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (mask == nullptr || (*mask)(r, c) != 0.0) mx = std::max(mx, x(r, c));
    }
    if (mx == -std::numeric_limits<double>::infinity()) {
      throw InputError("softmax: row " + std::to_string(r) + " has no unmasked entries");
    }
    double total = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (mask == nullptr || (*mask)(r, c) != 0.0) {
        y(r, c) = std::exp(x(r, c) - mx);
        total += y(r, c);
      }
    }
    y.row(r) /= total;
  }
  return y;
}

Var softmax_impl(Var x, const Matrix* mask, const char* op) {
  const std::size_t ix = x.index();
  return x.tape()->record(
      row_softmax(x.value(), mask), {ix},
      [ix](Tape& t, std::size_t self) {
        const Matrix& y = t.value(self);
        const Matrix& g = t.grad(self);
        Vector dot = g.cwiseProduct(y).rowwise().sum();
        t.accumulate(ix, y.cwiseProduct((g.colwise() - dot)));
      },
      op);
}

}  // namespace

Var softmax_rows(Var x) { return softmax_impl(x, nullptr, "softmax_rows"); }

Var masked_softmax_rows(Var x, const Matrix& mask) {
  if (mask.rows() != x.rows() || mask.cols() != x.cols()) {
    shape_fail("masked_softmax_rows", x.value(), mask);
  }
  return softmax_impl(x, &mask, "masked_softmax_rows");
}

Var sum(Var x) {
  const std::size_t ix = x.index();
  const Eigen::Index r = x.rows(), c = x.cols();
  Matrix out(1, 1);
  out(0, 0) = x.value().sum();
  return x.tape()->record(
      std::move(out), {ix},
      [ix, r, c](Tape& t, std::size_t self) {
        t.accumulate(ix, Matrix::Constant(r, c, t.grad(self)(0, 0)));
      },
      "sum");
}

Var mean(Var x) {
  const double n = static_cast<double>(x.value().size());
  return scale(sum(x), 1.0 / n);
}

Var mse_loss(Var pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    shape_fail("mse_loss", pred.value(), target);
  }
  const std::size_t ip = pred.index();
  const double n = static_cast<double>(target.size());
  Matrix diff = pred.value() - target;
  Matrix out(1, 1);
  out(0, 0) = diff.squaredNorm() / n;
  return pred.tape()->record(
      std::move(out), {ip},
      [ip, diff = std::move(diff), n](Tape& t, std::size_t self) {
        t.accumulate(ip, (2.0 * t.grad(self)(0, 0) / n) * diff);
      },
      "mse_loss");
}

}  // namespace rtgcn
