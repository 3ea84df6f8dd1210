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

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <memory>
#include <vector>

namespace era::ad {

using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

class Var;
struct Node;

// Maps the gradient of a node's output to one gradient per input. Gradients
// are themselves built from Var ops, so when the graph is recorded they can
// be differentiated again (needed for gradient penalties).
using BackwardFn = std::function<std::vector<Var>(const Var& grad_out, const Node& self)>;

struct Node {
  Matrix value;
  bool requires_grad = false;
  std::vector<Var> inputs;
  BackwardFn backward;
  // Set for block-extraction nodes: position of this value inside input 0.
  // Lets first-order backward passes scatter into the parent gradient
  // instead of materializing a zero-padded copy.
  bool is_block = false;
  Eigen::Index block_row = 0;
  Eigen::Index block_col = 0;
};

// Shared handle to a node in a dynamically recorded computation graph.
// Copies alias the same node; parameters are updated in place through
// mutable_value().
class Var {
 public:
  Var() = default;
  explicit Var(Matrix value);
  explicit Var(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static Var parameter(Matrix value);
  static Var scalar(double value);

  bool defined() const { return static_cast<bool>(node_); }
  const Matrix& value() const { return node_->value; }
  Matrix& mutable_value() const { return node_->value; }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  double item() const;

  Node* node() const { return node_.get(); }

 private:
  std::shared_ptr<Node> node_;
};

bool grad_enabled();

// Scoped switch for graph recording; restores the previous mode on exit.
class GradModeGuard {
 public:
  explicit GradModeGuard(bool enabled);
  ~GradModeGuard();
  GradModeGuard(const GradModeGuard&) = delete;
  GradModeGuard& operator=(const GradModeGuard&) = delete;

 private:
  bool previous_;
};

class NoGradGuard : public GradModeGuard {
 public:
  NoGradGuard() : GradModeGuard(false) {}
};

// Builds an op result. Records the graph edge only when recording is enabled
// and some input requires a gradient.
Var make_result(Matrix value, std::vector<Var> inputs, BackwardFn backward);

// Gradients of a scalar output with respect to each entry of wrt. Inputs the
// output does not depend on receive zeros. With create_graph the returned
// gradients are differentiable.
std::vector<Var> grad(const Var& output, const std::vector<Var>& wrt, bool create_graph = false);

}  // namespace era::ad
