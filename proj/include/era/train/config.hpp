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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "era/model/critic.hpp"
#include "era/model/summarizer.hpp"
#include "era/model/vae.hpp"

namespace era::train {

struct LossWeights {
  double recon = 1.0;
  double prior = 1.0;
  double sparsity = 1.0;
  double score_sum = 1.0;
  double adversarial = 1.0;
};

struct Toggles {
  bool use_stgcn = true;
  bool use_diff_attention = true;
  bool use_wgan = true;
  bool use_patch = true;
  bool use_score_sum = true;
};

struct TrainConfig {
  double lr = 1e-4;
  double lr_decay_factor = 0.1;
  // The rate drops once, after this many epochs.
  int lr_decay_epoch = 10;
  int epochs = 20;
  double sigma = 0.15;
  int n_critic = 5;
  LossWeights weights;
  Toggles toggles;
  std::uint64_t seed = 0;

  // Learning rate in effect during a 1-based epoch.
  double lr_at_epoch(int epoch) const;
};

// Everything a training run depends on. Model configs inherit the toggles
// and seed through resolved().
struct ExperimentConfig {
  TrainConfig train;
  model::SummarizerConfig summarizer;
  model::VaeConfig vae;
  model::PatchConfig critic;

  ExperimentConfig resolved() const;

  // Flat "key -> value" view; keys as accepted by set().
  std::map<std::string, std::string> to_key_values() const;
  // Parses and assigns one key. Throws ArgumentError for unknown keys or
  // unparsable values.
  void set(const std::string& key, const std::string& value);
  // Assigns every pair; on failure throws ValidationError listing every
  // offending key, not just the first.
  void apply(const std::map<std::string, std::string>& values);
  // Throws ValidationError listing every violated constraint.
  void validate() const;

  // Canonical "key = value" lines, sorted by key.
  std::string to_text() const;
  std::string digest() const;

  // Same-sized model as the defaults but with small widths, for tests and
  // desk-scale runs.
  static ExperimentConfig compact(int feature_dim, int entity_dim);
};

// "key = value" lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_key_values(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace era::train
