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

#include "era/train/adam.hpp"

#include <cmath>

#include "era/core/errors.hpp"

namespace era::train {

Adam::Adam(std::vector<ad::Var> params, double lr, double beta1, double beta2, double epsilon)
    : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {
  for (const auto& p : params_) {
    m_.push_back(ad::Matrix::Zero(p.rows(), p.cols()));
    v_.push_back(ad::Matrix::Zero(p.rows(), p.cols()));
  }
}

void Adam::step(const std::vector<ad::Var>& grads) {
  if (grads.size() != params_.size()) throw ArgumentError("Adam: gradient count differs from parameter count");
  ++t_;
  const double correction1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double correction2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const ad::Matrix& g = grads[i].value();
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g.cwiseAbs2();
    params_[i].mutable_value().array() -=
        lr_ * (m_[i].array() / correction1) / ((v_[i].array() / correction2).sqrt() + epsilon_);
  }
}

std::map<std::string, ad::Matrix> Adam::export_moments(const std::string& prefix) const {
  std::map<std::string, ad::Matrix> out;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    out.emplace(prefix + ".m." + std::to_string(i), m_[i]);
    out.emplace(prefix + ".v." + std::to_string(i), v_[i]);
  }
  return out;
}

void Adam::import_moments(const std::map<std::string, ad::Matrix>& tensors, const std::string& prefix,
                          long long steps) {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const auto m = tensors.find(prefix + ".m." + std::to_string(i));
    const auto v = tensors.find(prefix + ".v." + std::to_string(i));
    if (m == tensors.end() || v == tensors.end() || m->second.rows() != m_[i].rows() ||
        m->second.cols() != m_[i].cols() || v->second.rows() != v_[i].rows() || v->second.cols() != v_[i].cols()) {
      throw ValidationError("optimizer state for '" + prefix + "' does not match parameter " + std::to_string(i));
    }
    m_[i] = m->second;
    v_[i] = v->second;
  }
  t_ = steps;
}

}  // namespace era::train
