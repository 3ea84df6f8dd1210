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

#include "era/autodiff/ops.hpp"

namespace era::train {

// (sum_t s_t) / sqrt(T). Penalizes score mass with a length-aware scale.
ad::Var score_sum_loss(const ad::Var& scores);
double score_sum_loss(const Eigen::VectorXd& scores);

// (mean(s) - sigma)^2.
ad::Var sparsity_loss(const ad::Var& scores, double sigma);
double sparsity_loss(const Eigen::VectorXd& scores, double sigma);

}  // namespace era::train
