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

#include <map>
#include <string>
#include <vector>

#include "era/autodiff/var.hpp"

namespace era::train {

// Adaptive-moment optimizer over a fixed parameter list, updating the
// parameter values in place.
class Adam {
 public:
  explicit Adam(std::vector<ad::Var> params, double lr, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8);

  void step(const std::vector<ad::Var>& grads);
  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }
  long long steps() const { return t_; }

  // Moment estimates as named tensors "<prefix>.m.<i>" / "<prefix>.v.<i>".
  std::map<std::string, ad::Matrix> export_moments(const std::string& prefix) const;
  void import_moments(const std::map<std::string, ad::Matrix>& tensors, const std::string& prefix, long long steps);

 private:
  std::vector<ad::Var> params_;
  std::vector<ad::Matrix> m_;
  std::vector<ad::Matrix> v_;
  double lr_;
  double beta1_;
  double beta2_;
  double epsilon_;
  long long t_ = 0;
};

}  // namespace era::train
