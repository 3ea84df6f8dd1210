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

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "era/cli/commands.hpp"
#include "era/data/splits.hpp"
#include "era/eval/protocol.hpp"

namespace fs = std::filesystem;
using namespace era;

int main(int argc, char** argv) {
  CLI::App app{"Entity-relationship-aware video summarization"};
  app.require_subcommand(1);

  std::optional<fs::path> dataset;
  fs::path splits_path, out;
  std::uint64_t seed = 0;
  std::string value_mode = "mean";

  cli::SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--videos", synth.options.n_videos, "Number of videos")->capture_default_str();
  synth_cmd->add_option("--t-min", synth.options.t_min, "Minimum downsampled length")->capture_default_str();
  synth_cmd->add_option("--t-max", synth.options.t_max, "Maximum downsampled length")->capture_default_str();
  synth_cmd->add_option("--users", synth.options.n_users, "User summaries per video")->capture_default_str();
  synth_cmd->add_option("--entity-rate", synth.options.entity_rate, "Fraction of frames with entities")
      ->capture_default_str();
  synth_cmd->add_option("--feature-dim", synth.options.feature_dim, "Scene feature width")->capture_default_str();
  synth_cmd->add_option("--entity-dim", synth.options.entity_dim, "Entity feature width")->capture_default_str();
  synth_cmd->add_option("--seed", synth.options.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  cli::SplitArgs split;
  std::string split_mode = "non-overlapping";
  auto* split_cmd = app.add_subcommand("splits", "Generate cross-validation splits");
  split_cmd->add_option("--dataset", dataset, "Dataset container (default $ERA_DATA_DIR/dataset.h5)");
  split_cmd->add_option("--folds", split.folds, "Number of folds")->capture_default_str();
  split_cmd->add_option("--mode", split_mode, "overlapping or non-overlapping")->capture_default_str();
  split_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  split_cmd->add_option("--out", out, "Output directory")->required();

  cli::TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train one model per fold");
  train_cmd->add_option("--dataset", dataset, "Dataset container (default $ERA_DATA_DIR/dataset.h5)");
  train_cmd->add_option("--splits", train.splits, "Split file")->required();
  train_cmd->add_option("--config", train.config, "Config file (key = value lines)");
  train_cmd->add_option("--set", train.overrides, "Override a config key: key=value (repeatable)");
  train_cmd->add_option("--seed", train.seed, "Seed override");
  train_cmd->add_option("--fold", train.fold, "Train only this fold");
  train_cmd->add_option("--resume", train.resume, "Continue an interrupted run from its output directory");
  train_cmd->add_option("--out", train.out, "Output directory")->required();

  cli::EvaluateArgs evaluate;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate per-fold checkpoints");
  eval_cmd->add_option("--dataset", dataset, "Dataset container (default $ERA_DATA_DIR/dataset.h5)");
  eval_cmd->add_option("--splits", evaluate.splits, "Split file")->required();
  eval_cmd->add_option("--checkpoints", evaluate.checkpoints, "Training output directory")->required();
  eval_cmd->add_option("--which", evaluate.which, "best or last")->capture_default_str();
  eval_cmd->add_option("--baseline", evaluate.baseline, "Also evaluate a baseline: random");
  eval_cmd->add_option("--seed", evaluate.seed, "Baseline seed")->capture_default_str();
  eval_cmd->add_option("--value-mode", value_mode, "Knapsack shot value: mean or sum")->capture_default_str();
  eval_cmd->add_option("--out", evaluate.out, "Output directory")->required();

  cli::PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Plot frame scores and the selected shots of one video");
  plot_cmd->add_option("--dataset", dataset, "Dataset container (default $ERA_DATA_DIR/dataset.h5)");
  plot_cmd->add_option("--checkpoint", plot.checkpoint, "Checkpoint file")->required();
  plot_cmd->add_option("--video", plot.video_id, "Video id")->required();
  plot_cmd->add_option("--value-mode", value_mode, "Knapsack shot value: mean or sum")->capture_default_str();
  plot_cmd->add_option("--out", plot.out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) {
      std::cout << cli::cmd_synth(synth).string() << '\n';
    } else if (split_cmd->parsed()) {
      split.dataset = cli::resolve_dataset(dataset);
      split.mode = data::parse_split_mode(split_mode);
      split.seed = seed;
      split.out = out;
      std::cout << cli::cmd_generate_splits(split).string() << '\n';
    } else if (train_cmd->parsed()) {
      train.dataset = cli::resolve_dataset(dataset);
      cli::cmd_train(train);
    } else if (eval_cmd->parsed()) {
      evaluate.dataset = cli::resolve_dataset(dataset);
      evaluate.value_mode = eval::parse_value_mode(value_mode);
      const eval::EvalReport report = cli::cmd_evaluate(evaluate);
      std::cout << "f_avg " << report.f_avg << "  f_max " << report.f_max << '\n';
    } else if (plot_cmd->parsed()) {
      plot.dataset = cli::resolve_dataset(dataset);
      plot.value_mode = eval::parse_value_mode(value_mode);
      cli::cmd_plot_scores(plot);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
