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

#include "era/train/losses.hpp"

#include <cmath>

#include "era/core/errors.hpp"

namespace era::train {

ad::Var score_sum_loss(const ad::Var& scores) {
  if (scores.value().size() == 0) throw ArgumentError("score_sum_loss of an empty score vector");
  return ad::scale(ad::sum(scores), 1.0 / std::sqrt(static_cast<double>(scores.value().size())));
}

double score_sum_loss(const Eigen::VectorXd& scores) {
  return score_sum_loss(ad::Var(ad::Matrix(scores))).item();
}

ad::Var sparsity_loss(const ad::Var& scores, double sigma) {
  return ad::square(ad::add_scalar(ad::mean(scores), -sigma));
}

double sparsity_loss(const Eigen::VectorXd& scores, double sigma) {
  if (scores.size() == 0) throw ArgumentError("sparsity_loss of an empty score vector");
  return sparsity_loss(ad::Var(ad::Matrix(scores)), sigma).item();
}

}  // namespace era::train
