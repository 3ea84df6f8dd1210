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

#include <string>
#include <vector>

#include "era/data/types.hpp"
#include "era/model/checkpoint.hpp"
#include "era/model/critic.hpp"
#include "era/model/summarizer.hpp"
#include "era/model/vae.hpp"
#include "era/train/config.hpp"

namespace era::train {

// Summarizer, VAE and critic sharing one parameter store.
class EraModel {
 public:
  explicit EraModel(const ExperimentConfig& config);
  // Copies would share parameter nodes.
  EraModel(const EraModel&) = delete;
  EraModel& operator=(const EraModel&) = delete;
  EraModel(EraModel&&) = default;
  EraModel& operator=(EraModel&&) = default;

  const ExperimentConfig& config() const { return config_; }
  model::ParamStore& params() { return params_; }
  const model::ParamStore& params() const { return params_; }
  const model::SummarizerParams& summarizer() const { return summarizer_; }
  const model::VaeParams& vae() const { return vae_; }
  const model::CriticParams& critic() const { return critic_; }

  // Summarizer and VAE parameters.
  std::vector<ad::Var> generator_params() const;
  // Only the critic parameters the configured discriminator actually uses.
  std::vector<ad::Var> critic_params() const;
  model::CriticFn critic_fn() const;

  model::FrameScores score(const data::Video& video) const;

  model::Checkpoint to_checkpoint() const;
  // Loads tensors from a checkpoint built for the same configuration.
  void load(const model::Checkpoint& checkpoint);

 private:
  ExperimentConfig config_;
  model::ParamStore params_;
  model::SummarizerParams summarizer_;
  model::VaeParams vae_;
  model::CriticParams critic_;
};

// Model whose configuration is read from the checkpoint manifest.
EraModel model_from_checkpoint(const model::Checkpoint& checkpoint);

}  // namespace era::train
