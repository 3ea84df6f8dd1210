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

#include "era/train/era_model.hpp"

#include <json.hpp>

#include "era/core/errors.hpp"
#include "era/core/rng.hpp"

namespace era::train {

EraModel::EraModel(const ExperimentConfig& config) : config_(config.resolved()) {
  config_.validate();
  Rng rng = substream(config_.train.seed, "init");
  summarizer_ = model::create_summarizer_params(config_.summarizer, params_, rng);
  vae_ = model::create_vae_params(config_.vae, params_, rng);
  critic_ = model::create_critic_params(config_.critic, params_, rng);
}

std::vector<ad::Var> EraModel::generator_params() const {
  std::vector<ad::Var> out = params_.with_prefix("summarizer.");
  const std::vector<ad::Var> vae = params_.with_prefix("vae.");
  out.insert(out.end(), vae.begin(), vae.end());
  return out;
}

std::vector<ad::Var> EraModel::critic_params() const {
  if (!config_.train.toggles.use_patch) return params_.with_prefix("critic.recurrent");
  std::vector<ad::Var> out = params_.with_prefix("critic.block.");
  const std::vector<ad::Var> head = params_.with_prefix("critic.head.");
  out.insert(out.end(), head.begin(), head.end());
  return out;
}

model::CriticFn EraModel::critic_fn() const {
  return config_.train.toggles.use_patch ? model::patch_critic(critic_) : model::recurrent_critic(critic_);
}

model::FrameScores EraModel::score(const data::Video& video) const {
  return model::summarize(video.record, video.detections, config_.summarizer, summarizer_);
}

model::Checkpoint EraModel::to_checkpoint() const {
  nlohmann::json manifest;
  manifest["format"] = "era-checkpoint";
  manifest["seed"] = config_.train.seed;
  manifest["config"] = config_.to_key_values();
  return {manifest.dump(2), params_.snapshot()};
}

void EraModel::load(const model::Checkpoint& checkpoint) { params_.assign(checkpoint.tensors); }

EraModel model_from_checkpoint(const model::Checkpoint& checkpoint) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(checkpoint.manifest);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("checkpoint manifest is not JSON: ") + e.what());
  }
  if (!manifest.contains("config") || !manifest["config"].is_object()) {
    throw ParseError("checkpoint manifest lacks a config section");
  }
  ExperimentConfig config;
  config.apply(manifest["config"].get<std::map<std::string, std::string>>());
  EraModel model(config);
  model.load(checkpoint);
  return model;
}

}  // namespace era::train
