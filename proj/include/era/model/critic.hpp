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

#include <functional>
#include <string>
#include <vector>

#include "era/autodiff/ops.hpp"
#include "era/model/layers.hpp"

namespace era::model {

enum class CriticLossMode {
  kPaper,     // |E c(x) - E c(x')| + penalty
  kStandard,  // E c(x') - E c(x) + penalty
};

std::string to_string(CriticLossMode mode);
CriticLossMode parse_critic_loss_mode(const std::string& text);

struct PatchConfig {
  int feature_size = 1024;  // K
  int blocks = 2;           // M
  int kernel = 5;
  int stride = 5;
  double lambda_gp = 10.0;
  CriticLossMode loss_mode = CriticLossMode::kStandard;
  // Hidden width of the recurrent discriminator used when patches are off.
  int recurrent_hidden = 256;

  void validate() const;
};

// One building block: non-overlapping window conv (K -> 2K) then a pointwise
// conv back to K, each followed by ReLU.
struct PatchBlock {
  Linear window;     // [5K x 2K]
  Linear pointwise;  // [2K x K]
};

struct CriticParams {
  std::vector<PatchBlock> blocks;
  Linear head;  // [K x 1]
  LstmCell recurrent;
  Linear recurrent_head;
};

CriticParams create_critic_params(const PatchConfig& config, ParamStore& store, Rng& rng);

// [T x K] -> [ceil(T / 5^M) x K]. The sequence is zero-padded on the right to
// a multiple of 5 before every block.
ad::Var patch_forward(const ad::Var& sequence, const std::vector<PatchBlock>& blocks);

// One unbounded score per patch; [P x 1].
ad::Var critic_scores(const ad::Var& patches, const Linear& head);

// Scores a whole sequence with the recurrent discriminator: [1 x 1].
ad::Var recurrent_scores(const ad::Var& sequence, const CriticParams& params);

// Maps a feature sequence to a column of scores.
using CriticFn = std::function<ad::Var(const ad::Var&)>;

CriticFn patch_critic(const CriticParams& params);
CriticFn recurrent_critic(const CriticParams& params);

// lambda * (||grad_z mean(critic(z))||_2 - 1)^2 at z = eps x + (1 - eps) x'.
// Differentiable with respect to the critic's parameters.
ad::Var gradient_penalty(const CriticFn& critic, const ad::Matrix& x, const ad::Matrix& x_prime, double eps,
                         double lambda);

ad::Var critic_loss(const CriticFn& critic, const ad::Matrix& x, const ad::Matrix& x_prime, CriticLossMode mode,
                    double eps, double lambda);

// -mean(critic(x')). x' may carry a graph back into the generator.
ad::Var generator_adversarial_loss(const CriticFn& critic, const ad::Var& x_prime);

// Binary cross-entropy discriminator used when the Wasserstein critic is off:
// real sequences labelled 1, reconstructions 0.
ad::Var discriminator_bce_loss(const CriticFn& critic, const ad::Matrix& x, const ad::Matrix& x_prime);
ad::Var generator_bce_loss(const CriticFn& critic, const ad::Var& x_prime);

}  // namespace era::model
