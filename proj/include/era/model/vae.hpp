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

#include <cstdint>

#include "era/autodiff/ops.hpp"
#include "era/model/layers.hpp"

namespace era::model {

struct VaeConfig {
  int d_input = 1024;
  int d_hidden = 512;
  int d_latent = 512;
  std::uint64_t seed = 0;

  void validate() const;
};

struct VaeParams {
  LstmCell encoder;
  Linear to_mu;
  Linear to_logvar;
  LstmCell decoder;
  Linear to_output;
};

VaeParams create_vae_params(const VaeConfig& config, ParamStore& store, Rng& rng);

struct Posterior {
  ad::Var mu;      // [1 x d_latent]
  ad::Var logvar;  // [1 x d_latent]
};

// Runs the encoder over score-weighted features (row t already scaled by s_t)
// and maps the final hidden state to the posterior parameters.
Posterior encode(const ad::Var& weighted_features, const VaeParams& params);

// z = mu + exp(logvar / 2) * noise.
ad::Var reparameterize(const ad::Var& mu, const ad::Var& logvar, const ad::Var& noise);

// The decoder reads z at every step from a zero state and emits one feature
// row per step; [frames x d_input].
ad::Var decode(const ad::Var& z, Eigen::Index frames, const VaeParams& params);

// 0.5 * sum(mu^2 + exp(logvar) - 1 - logvar).
ad::Var prior_loss(const ad::Var& mu, const ad::Var& logvar);

// Mean squared error over all entries.
ad::Var reconstruction_loss(const ad::Var& x, const ad::Var& x_hat);

}  // namespace era::model
