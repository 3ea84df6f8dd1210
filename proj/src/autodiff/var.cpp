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

#include "era/autodiff/var.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "era/autodiff/ops.hpp"
#include "era/core/errors.hpp"

namespace era::ad {
namespace {

thread_local bool g_grad_enabled = true;

// Post-order over nodes that require gradients.
std::vector<Node*> topological_order(Node* root) {
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack;
  stack.emplace_back(root, 0);
  visited.insert(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node* child = node->inputs[next++].node();
      if (child && child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

}  // namespace

Var::Var(Matrix value) : node_(std::make_shared<Node>()) { node_->value = std::move(value); }

Var Var::parameter(Matrix value) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->requires_grad = true;
  return Var(std::move(node));
}

Var Var::scalar(double value) { return Var(Matrix::Constant(1, 1, value)); }

double Var::item() const {
  if (value().size() != 1) {
    throw ArgumentError("item() on a " + std::to_string(rows()) + "x" + std::to_string(cols()) +
                        " value");
  }
  return value()(0, 0);
}

bool grad_enabled() { return g_grad_enabled; }

GradModeGuard::GradModeGuard(bool enabled) : previous_(g_grad_enabled) { g_grad_enabled = enabled; }
GradModeGuard::~GradModeGuard() { g_grad_enabled = previous_; }

Var make_result(Matrix value, std::vector<Var> inputs, BackwardFn backward) {
  const bool record = g_grad_enabled && std::any_of(inputs.begin(), inputs.end(),
                                                    [](const Var& v) { return v.requires_grad(); });
  if (!record) return Var(std::move(value));
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->requires_grad = true;
  node->inputs = std::move(inputs);
  node->backward = std::move(backward);
  return Var(std::move(node));
}

namespace {

// Differentiable accumulation: gradients stay Vars so they can be
// differentiated again.
std::unordered_map<Node*, Var> accumulate_graph(const Var& output, const std::vector<Node*>& order) {
  std::unordered_map<Node*, Var> grads;
  GradModeGuard mode(true);
  grads.emplace(output.node(), Var(Matrix::Ones(1, 1)));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    auto found = grads.find(node);
    if (found == grads.end() || !node->backward) continue;
    const Var upstream = found->second;
    std::vector<Var> parts = node->backward(upstream, *node);
    for (std::size_t i = 0; i < node->inputs.size() && i < parts.size(); ++i) {
      const Var& input = node->inputs[i];
      if (!input.requires_grad() || !parts[i].defined()) continue;
      auto [slot, inserted] = grads.try_emplace(input.node(), parts[i]);
      if (!inserted) slot->second = add(slot->second, parts[i]);
    }
  }
  return grads;
}

// Plain numeric accumulation for first-order gradients.
std::unordered_map<Node*, Matrix> accumulate_values(const Var& output, const std::vector<Node*>& order,
                                                    const std::unordered_set<Node*>& wanted) {
  std::unordered_map<Node*, Matrix> grads;
  GradModeGuard mode(false);
  grads.emplace(output.node(), Matrix::Ones(1, 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    auto found = grads.find(node);
    if (found == grads.end() || !node->backward) continue;
    Matrix upstream;
    if (wanted.count(node)) {
      upstream = found->second;
    } else {
      upstream = std::move(found->second);
      grads.erase(found);
    }
    if (node->is_block) {
      Node* parent = node->inputs[0].node();
      auto [slot, inserted] = grads.try_emplace(parent);
      if (inserted) slot->second = Matrix::Zero(parent->value.rows(), parent->value.cols());
      slot->second.block(node->block_row, node->block_col, upstream.rows(), upstream.cols()) += upstream;
      continue;
    }
    std::vector<Var> parts = node->backward(Var(std::move(upstream)), *node);
    for (std::size_t i = 0; i < node->inputs.size() && i < parts.size(); ++i) {
      const Var& input = node->inputs[i];
      if (!input.requires_grad() || !parts[i].defined()) continue;
      auto [slot, inserted] = grads.try_emplace(input.node());
      if (inserted) {
        slot->second = parts[i].value();
      } else {
        slot->second += parts[i].value();
      }
    }
  }
  return grads;
}

}  // namespace

std::vector<Var> grad(const Var& output, const std::vector<Var>& wrt, bool create_graph) {
  if (!output.defined() || output.value().size() != 1) {
    throw ArgumentError("grad() needs a scalar output");
  }
  std::vector<Var> result;
  result.reserve(wrt.size());
  auto zeros = [](const Var& w) { return Var(Matrix::Zero(w.rows(), w.cols())); };
  if (!output.requires_grad()) {
    for (const Var& w : wrt) result.push_back(zeros(w));
    return result;
  }
  const std::vector<Node*> order = topological_order(output.node());
  if (create_graph) {
    auto grads = accumulate_graph(output, order);
    for (const Var& w : wrt) {
      auto found = grads.find(w.node());
      result.push_back(found != grads.end() ? found->second : zeros(w));
    }
  } else {
    std::unordered_set<Node*> wanted;
    for (const Var& w : wrt) wanted.insert(w.node());
    auto grads = accumulate_values(output, order, wanted);
    for (const Var& w : wrt) {
      auto found = grads.find(w.node());
      result.push_back(found != grads.end() ? Var(std::move(found->second)) : zeros(w));
    }
  }
  return result;
}

}  // namespace era::ad
