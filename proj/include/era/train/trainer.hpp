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
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "era/core/rng.hpp"
#include "era/data/splits.hpp"
#include "era/data/types.hpp"
#include "era/train/adam.hpp"
#include "era/train/era_model.hpp"

namespace era::train {

// One line of the training log: the generator step on one video together
// with the critic loss of the updates that preceded it.
struct StepRecord {
  int epoch = 0;
  long long step = 0;
  std::string video_id;
  std::map<std::string, double> terms;
  double lr = 0.0;
};

std::string to_log_line(const StepRecord& record);
StepRecord parse_log_line(const std::string& line);

// Alternating generator / critic updates on one model. Batches are single
// videos.
class Trainer {
 public:
  explicit Trainer(EraModel& model);

  // One update of the summarizer and VAE with the critic frozen. Returns
  // recon, prior, sparsity, score_sum, adversarial and total; disabled terms
  // (toggle off or zero weight) are reported as 0. Throws NumericError naming
  // the first non-finite term.
  std::map<std::string, double> generator_step(const data::Video& video, Rng& rng);

  // One critic update against a fixed reconstruction. Returns the loss.
  double critic_step(const data::Video& video, const ad::Matrix& reconstruction, Rng& rng);

  // Reconstruction from the current generator without recording a graph.
  ad::Matrix reconstruct(const data::Video& video, Rng& rng);

  // n_critic critic steps on one reconstruction, then one generator step.
  StepRecord train_on(const data::Video& video, int epoch, Rng& rng);

  void set_lr(double lr);
  double lr() const { return generator_opt_.lr(); }
  long long generator_updates() const { return generator_opt_.steps(); }
  long long critic_updates() const { return critic_opt_.steps(); }
  EraModel& model() { return model_; }
  long long step_count() const { return step_; }

  // Optimizer moments and counters for resuming; tensors plus a JSON manifest.
  model::Checkpoint optimizer_state() const;
  void restore_optimizer_state(const model::Checkpoint& state);

 private:
  const model::GraphInput& graph(const data::Video& video);

  EraModel& model_;
  Adam generator_opt_;
  Adam critic_opt_;
  long long step_ = 0;
  std::map<std::string, model::GraphInput> graphs_;
};

struct FitResult {
  model::Checkpoint best;
  model::Checkpoint last;
  std::vector<StepRecord> log;
  int best_epoch = 0;
  double best_total = std::numeric_limits<double>::infinity();
};

struct FitOptions {
  std::function<void(const StepRecord&)> on_step;
  // Called after every epoch with the 1-based epoch index and the progress
  // so far (best/last already updated).
  std::function<void(int epoch, const Trainer& trainer, const FitResult& progress)> on_epoch_end;
};

// Where an interrupted run stopped.
struct ResumePoint {
  int completed_epochs = 0;
  model::Checkpoint optimizer;
  model::Checkpoint best;
  int best_epoch = 0;
  double best_total = std::numeric_limits<double>::infinity();
};

// Trains a fresh model on the fold's training videos. Each epoch visits the
// videos in a seeded shuffled order; the learning rate follows
// TrainConfig::lr_at_epoch. The best checkpoint has the lowest mean generator
// total over an epoch.
FitResult fit(const data::Dataset& dataset, const data::Fold& fold, const ExperimentConfig& config,
              const FitOptions& options = {});

// Trains model in place. With a resume point, continues after its last
// completed epoch with the saved optimizer state.
FitResult fit_model(EraModel& model, const data::Dataset& dataset, const std::vector<std::string>& train_ids,
                    const FitOptions& options = {}, const ResumePoint* resume = nullptr);

}  // namespace era::train
