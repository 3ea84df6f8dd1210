// Copyright 2026 The ERA Summarization Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "era/autodiff/ops.hpp"

#include <cmath>
#include <string>

#include "era/core/errors.hpp"

namespace era::ad {
namespace {

std::string shape(const Var& v) {
  return std::to_string(v.rows()) + "x" + std::to_string(v.cols());
}

void require_same_shape(const Var& a, const Var& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
  }
}

// The op output as a Var inside a backward pass. While building a
// differentiable gradient it is recomputed from the inputs so the result
// stays connected to the graph; otherwise the cached value suffices.
template <typename Recompute>
Var output_of(const Node& self, Recompute recompute) {
  if (grad_enabled()) return recompute();
  return Var(self.value);
}

double stable_softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double stable_sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

SparseOperator::SparseOperator(SparseMatrix forward)
    : forward_(std::make_shared<const SparseMatrix>(std::move(forward))),
      transposed_(std::make_shared<const SparseMatrix>(SparseMatrix(forward_->transpose()))) {}

SparseOperator SparseOperator::transposed() const {
  SparseOperator out;
  out.forward_ = transposed_;
  out.transposed_ = forward_;
  return out;
}

Var add(const Var& a, const Var& b) {
  require_same_shape(a, b, "add");
  return make_result(a.value() + b.value(), {a, b},
                     [](const Var& g, const Node&) { return std::vector<Var>{g, g}; });
}

Var sub(const Var& a, const Var& b) {
  require_same_shape(a, b, "sub");
  return make_result(a.value() - b.value(), {a, b},
                     [](const Var& g, const Node&) { return std::vector<Var>{g, neg(g)}; });
}

Var mul(const Var& a, const Var& b) {
  require_same_shape(a, b, "mul");
  return make_result(a.value().cwiseProduct(b.value()), {a, b},
                     [a, b](const Var& g, const Node&) {
                       return std::vector<Var>{a.requires_grad() ? mul(g, b) : Var(),
                                               b.requires_grad() ? mul(g, a) : Var()};
                     });
}

Var neg(const Var& a) {
  return make_result(-a.value(), {a},
                     [](const Var& g, const Node&) { return std::vector<Var>{neg(g)}; });
}

Var scale(const Var& a, double factor) {
  return make_result(a.value() * factor, {a}, [factor](const Var& g, const Node&) {
    return std::vector<Var>{scale(g, factor)};
  });
}

Var add_scalar(const Var& a, double offset) {
  return make_result(a.value().array() + offset, {a},
                     [](const Var& g, const Node&) { return std::vector<Var>{g}; });
}

Var reciprocal(const Var& a) {
  return make_result(a.value().cwiseInverse(), {a}, [a](const Var& g, const Node&) {
    return std::vector<Var>{mul(g, neg(reciprocal(square(a))))};
  });
}

Var relu(const Var& a) {
  return make_result(a.value().cwiseMax(0.0), {a}, [a](const Var& g, const Node&) {
    Matrix mask = (a.value().array() > 0.0).cast<double>().matrix();
    return std::vector<Var>{mul(g, Var(std::move(mask)))};
  });
}

Var sigmoid(const Var& a) {
  return make_result(a.value().unaryExpr(&stable_sigmoid), {a}, [a](const Var& g, const Node& self) {
    Var s = output_of(self, [&] { return sigmoid(a); });
    return std::vector<Var>{mul(g, mul(s, add_scalar(neg(s), 1.0)))};
  });
}

Var tanh(const Var& a) {
  return make_result(a.value().array().tanh().matrix(), {a}, [a](const Var& g, const Node& self) {
    Var t = output_of(self, [&] { return tanh(a); });
    return std::vector<Var>{mul(g, add_scalar(neg(square(t)), 1.0))};
  });
}

Var exp(const Var& a) {
  return make_result(a.value().array().exp().matrix(), {a}, [a](const Var& g, const Node& self) {
    Var e = output_of(self, [&] { return exp(a); });
    return std::vector<Var>{mul(g, e)};
  });
}

Var softplus(const Var& a) {
  return make_result(a.value().unaryExpr(&stable_softplus), {a},
                     [a](const Var& g, const Node&) { return std::vector<Var>{mul(g, sigmoid(a))}; });
}

Var abs(const Var& a) {
  return make_result(a.value().cwiseAbs(), {a}, [a](const Var& g, const Node&) {
    Matrix sign = a.value().unaryExpr([](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); });
    return std::vector<Var>{mul(g, Var(std::move(sign)))};
  });
}

Var square(const Var& a) {
  return make_result(a.value().cwiseAbs2(), {a}, [a](const Var& g, const Node&) {
    return std::vector<Var>{mul(g, scale(a, 2.0))};
  });
}

Var matmul(const Var& a, const Var& b) {
  if (a.cols() != b.rows()) {
    throw ArgumentError("matmul: inner dimensions differ " + shape(a) + " * " + shape(b));
  }
  Matrix out = a.value() * b.value();
  return make_result(std::move(out), {a, b}, [a, b](const Var& g, const Node&) {
    return std::vector<Var>{a.requires_grad() ? matmul(g, transpose(b)) : Var(),
                            b.requires_grad() ? matmul(transpose(a), g) : Var()};
  });
}

Var transpose(const Var& a) {
  return make_result(a.value().transpose(), {a},
                     [](const Var& g, const Node&) { return std::vector<Var>{transpose(g)}; });
}

Var spmm(const SparseOperator& op, const Var& dense) {
  if (op.cols() != dense.rows()) {
    throw ArgumentError("spmm: operator is " + std::to_string(op.rows()) + "x" +
                        std::to_string(op.cols()) + ", operand " + shape(dense));
  }
  Matrix out = op.rows() == 0 ? Matrix(0, dense.cols()) : Matrix(op.forward() * dense.value());
  return make_result(std::move(out), {dense}, [op](const Var& g, const Node&) {
    return std::vector<Var>{spmm(op.transposed(), g)};
  });
}

Var sum(const Var& a) {
  const auto rows = a.rows();
  const auto cols = a.cols();
  return make_result(Matrix::Constant(1, 1, a.value().sum()), {a}, [rows, cols](const Var& g, const Node&) {
    return std::vector<Var>{broadcast(g, rows, cols)};
  });
}

Var mean(const Var& a) {
  const double n = static_cast<double>(a.value().size());
  if (n == 0) throw ArgumentError("mean of an empty matrix");
  return scale(sum(a), 1.0 / n);
}

Var row_sums(const Var& a) {
  const auto cols = a.cols();
  return make_result(a.value().rowwise().sum(), {a}, [cols](const Var& g, const Node&) {
    return std::vector<Var>{repeat_cols(g, cols)};
  });
}

Var col_sums(const Var& a) {
  const auto rows = a.rows();
  return make_result(a.value().colwise().sum(), {a}, [rows](const Var& g, const Node&) {
    return std::vector<Var>{repeat_rows(g, rows)};
  });
}

Var broadcast(const Var& scalar, Eigen::Index rows, Eigen::Index cols) {
  if (scalar.value().size() != 1) throw ArgumentError("broadcast: expected 1x1, got " + shape(scalar));
  return make_result(Matrix::Constant(rows, cols, scalar.value()(0, 0)), {scalar},
                     [](const Var& g, const Node&) { return std::vector<Var>{sum(g)}; });
}

Var repeat_rows(const Var& row, Eigen::Index count) {
  if (row.rows() != 1) throw ArgumentError("repeat_rows: expected a row vector, got " + shape(row));
  return make_result(row.value().replicate(count, 1), {row},
                     [](const Var& g, const Node&) { return std::vector<Var>{col_sums(g)}; });
}

Var repeat_cols(const Var& column, Eigen::Index count) {
  if (column.cols() != 1) throw ArgumentError("repeat_cols: expected a column vector, got " + shape(column));
  return make_result(column.value().replicate(1, count), {column},
                     [](const Var& g, const Node&) { return std::vector<Var>{row_sums(g)}; });
}

Var frobenius_norm(const Var& a) {
  const double norm = a.value().norm();
  return make_result(Matrix::Constant(1, 1, norm), {a}, [a, norm](const Var& g, const Node& self) {
    // Subgradient 0 at the origin.
    if (norm == 0.0) return std::vector<Var>{Var(Matrix::Zero(a.rows(), a.cols()))};
    Var n = output_of(self, [&] { return frobenius_norm(a); });
    return std::vector<Var>{mul_scalar(a, mul(g, reciprocal(n)))};
  });
}

Var add_row(const Var& a, const Var& bias) {
  if (bias.rows() != 1 || bias.cols() != a.cols()) {
    throw ArgumentError("add_row: bias " + shape(bias) + " does not fit " + shape(a));
  }
  return add(a, repeat_rows(bias, a.rows()));
}

Var mul_rows(const Var& a, const Var& column) {
  if (column.cols() != 1 || column.rows() != a.rows()) {
    throw ArgumentError("mul_rows: column " + shape(column) + " does not fit " + shape(a));
  }
  return mul(a, repeat_cols(column, a.cols()));
}

Var mul_scalar(const Var& a, const Var& scalar) {
  if (scalar.value().size() != 1) throw ArgumentError("mul_scalar: expected 1x1, got " + shape(scalar));
  return make_result(a.value() * scalar.value()(0, 0), {a, scalar},
                     [a, scalar](const Var& g, const Node&) {
                       return std::vector<Var>{a.requires_grad() ? mul_scalar(g, scalar) : Var(),
                                               scalar.requires_grad() ? sum(mul(g, a)) : Var()};
                     });
}

Var block(const Var& a, Eigen::Index row, Eigen::Index col, Eigen::Index rows, Eigen::Index cols) {
  if (row < 0 || col < 0 || row + rows > a.rows() || col + cols > a.cols()) {
    throw ArgumentError("block: out of range of " + shape(a));
  }
  const auto total_rows = a.rows();
  const auto total_cols = a.cols();
  Var out = make_result(a.value().block(row, col, rows, cols), {a},
                        [=](const Var& g, const Node&) {
                          return std::vector<Var>{embed(g, row, col, total_rows, total_cols)};
                        });
  if (out.requires_grad()) {
    out.node()->is_block = true;
    out.node()->block_row = row;
    out.node()->block_col = col;
  }
  return out;
}

Var embed(const Var& a, Eigen::Index row, Eigen::Index col, Eigen::Index rows, Eigen::Index cols) {
  if (row < 0 || col < 0 || row + a.rows() > rows || col + a.cols() > cols) {
    throw ArgumentError("embed: " + shape(a) + " does not fit target");
  }
  Matrix out = Matrix::Zero(rows, cols);
  out.block(row, col, a.rows(), a.cols()) = a.value();
  const auto r = a.rows();
  const auto c = a.cols();
  return make_result(std::move(out), {a}, [=](const Var& g, const Node&) {
    return std::vector<Var>{block(g, row, col, r, c)};
  });
}

Var concat_cols(const Var& a, const Var& b) {
  if (a.rows() != b.rows()) throw ArgumentError("concat_cols: row mismatch " + shape(a) + " vs " + shape(b));
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a.value(), b.value();
  const auto rows = a.rows();
  const auto ca = a.cols();
  const auto cb = b.cols();
  return make_result(std::move(out), {a, b}, [=](const Var& g, const Node&) {
    return std::vector<Var>{block(g, 0, 0, rows, ca), block(g, 0, ca, rows, cb)};
  });
}

Var vstack(const std::vector<Var>& parts) {
  if (parts.empty()) throw ArgumentError("vstack of nothing");
  const auto cols = parts.front().cols();
  Eigen::Index rows = 0;
  std::vector<Eigen::Index> offsets;
  for (const Var& p : parts) {
    if (p.cols() != cols) throw ArgumentError("vstack: column mismatch");
    offsets.push_back(rows);
    rows += p.rows();
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.middleRows(offsets[i], parts[i].rows()) = parts[i].value();
  }
  std::vector<Eigen::Index> sizes;
  for (const Var& p : parts) sizes.push_back(p.rows());
  return make_result(std::move(out), parts, [offsets, sizes, cols](const Var& g, const Node& self) {
    std::vector<Var> grads;
    grads.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      grads.push_back(self.inputs[i].requires_grad() ? block(g, offsets[i], 0, sizes[i], cols) : Var());
    }
    return grads;
  });
}

Var group_rows(const Var& a, Eigen::Index k) {
  if (k <= 0 || a.rows() % k != 0) {
    throw ArgumentError("group_rows: " + std::to_string(a.rows()) + " rows not divisible by " +
                        std::to_string(k));
  }
  const auto width = a.cols();
  Matrix out(a.rows() / k, k * width);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    out.block(r / k, (r % k) * width, 1, width) = a.value().row(r);
  }
  return make_result(std::move(out), {a}, [k](const Var& g, const Node&) {
    return std::vector<Var>{ungroup_rows(g, k)};
  });
}

Var ungroup_rows(const Var& a, Eigen::Index k) {
  if (k <= 0 || a.cols() % k != 0) throw ArgumentError("ungroup_rows: columns not divisible");
  const auto width = a.cols() / k;
  Matrix out(a.rows() * k, width);
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    out.row(r) = a.value().block(r / k, (r % k) * width, 1, width);
  }
  return make_result(std::move(out), {a}, [k](const Var& g, const Node&) {
    return std::vector<Var>{group_rows(g, k)};
  });
}

}  // namespace era::ad
