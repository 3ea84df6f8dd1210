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

#pragma once

#include <memory>
#include <vector>

#include "era/autodiff/var.hpp"

namespace era::ad {

// Constant sparse operator with its transpose cached for the backward pass.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(SparseMatrix forward);

  const SparseMatrix& forward() const { return *forward_; }
  SparseOperator transposed() const;
  Eigen::Index rows() const { return forward_ ? forward_->rows() : 0; }
  Eigen::Index cols() const { return forward_ ? forward_->cols() : 0; }

 private:
  std::shared_ptr<const SparseMatrix> forward_;
  std::shared_ptr<const SparseMatrix> transposed_;
};

// Elementwise arithmetic (shapes must match).
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var neg(const Var& a);
Var scale(const Var& a, double factor);
Var add_scalar(const Var& a, double offset);
Var reciprocal(const Var& a);

// Elementwise nonlinearities.
Var relu(const Var& a);
Var sigmoid(const Var& a);
Var tanh(const Var& a);
Var exp(const Var& a);
Var softplus(const Var& a);
Var abs(const Var& a);
Var square(const Var& a);

Var matmul(const Var& a, const Var& b);
Var transpose(const Var& a);
Var spmm(const SparseOperator& op, const Var& dense);

// Reductions and broadcasts.
Var sum(const Var& a);
Var mean(const Var& a);
Var row_sums(const Var& a);
Var col_sums(const Var& a);
Var broadcast(const Var& scalar, Eigen::Index rows, Eigen::Index cols);
Var repeat_rows(const Var& row, Eigen::Index count);
Var repeat_cols(const Var& column, Eigen::Index count);
Var frobenius_norm(const Var& a);

// a + row-vector bias on every row.
Var add_row(const Var& a, const Var& bias);
// Each row i of a scaled by column(i).
Var mul_rows(const Var& a, const Var& column);
// a scaled by a 1x1 Var.
Var mul_scalar(const Var& a, const Var& scalar);

// Layout.
Var block(const Var& a, Eigen::Index row, Eigen::Index col, Eigen::Index rows, Eigen::Index cols);
Var embed(const Var& a, Eigen::Index row, Eigen::Index col, Eigen::Index rows, Eigen::Index cols);
Var concat_cols(const Var& a, const Var& b);
Var vstack(const std::vector<Var>& parts);
// [T x K] -> [T/k x k*K]: consecutive groups of k rows become one row.
Var group_rows(const Var& a, Eigen::Index k);
Var ungroup_rows(const Var& a, Eigen::Index k);

}  // namespace era::ad
