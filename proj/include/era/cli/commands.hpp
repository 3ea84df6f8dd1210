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
#include <optional>
#include <string>
#include <vector>

#include "era/data/splits.hpp"
#include "era/data/synthetic.hpp"
#include "era/eval/protocol.hpp"
#include "era/train/config.hpp"

namespace era::cli {

namespace fs = std::filesystem;

// Written once per output directory as run_manifest.json.
struct RunManifest {
  std::string command;
  std::string config_digest;
  std::string dataset_digest;
  std::string split_digest;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;
  std::vector<std::string> artifacts;
  double wall_clock_seconds = 0.0;
};

inline constexpr const char* kManifestName = "run_manifest.json";

void write_manifest(const RunManifest& manifest, const fs::path& out_dir);
RunManifest read_manifest(const fs::path& out_dir);

// Dataset path from the flag, else $ERA_DATA_DIR/dataset.h5. Throws
// ArgumentError when neither is available.
fs::path resolve_dataset(const std::optional<fs::path>& flag);

struct SynthArgs {
  data::SyntheticOptions options;
  fs::path out;
};
// Writes <out>/dataset.h5.
fs::path cmd_synth(const SynthArgs& args);

struct SplitArgs {
  fs::path dataset;
  int folds = 5;
  data::SplitMode mode = data::SplitMode::kNonOverlapping;
  std::uint64_t seed = 0;
  fs::path out;
};
// Writes <out>/splits.json.
fs::path cmd_generate_splits(const SplitArgs& args);

struct TrainArgs {
  fs::path dataset;
  fs::path splits;
  std::optional<fs::path> config;
  std::vector<std::string> overrides;  // "key=value"
  std::optional<std::uint64_t> seed;
  std::optional<int> fold;             // all folds when unset
  std::optional<fs::path> resume;
  fs::path out;
};

// Config file (or defaults, or the resumed run's config), then --set, then
// --seed. Throws ValidationError listing every offending key.
train::ExperimentConfig effective_config(const TrainArgs& args);

// Per fold k under <out>/fold_k: best.ckpt, last.ckpt, optimizer.ckpt,
// progress.json and log.jsonl. <out>/config.txt holds the effective config.
// Progress is saved after every epoch so an interrupted run can resume.
void cmd_train(const TrainArgs& args);

struct EvaluateArgs {
  fs::path dataset;
  fs::path splits;
  fs::path checkpoints;  // a cmd_train output directory
  std::string which = "best";
  std::optional<std::string> baseline;  // "random"
  std::uint64_t seed = 0;
  eval::ValueMode value_mode = eval::ValueMode::kMean;
  fs::path out;
};

// Seeded uniform scores in [0,1), one stream per video.
eval::Scorer random_scorer(std::uint64_t seed);

// Writes report.json and report.csv, plus baseline_random.{json,csv} when
// requested. Returns the model report.
eval::EvalReport cmd_evaluate(const EvaluateArgs& args);

struct PlotArgs {
  fs::path dataset;
  fs::path checkpoint;
  std::string video_id;
  eval::ValueMode value_mode = eval::ValueMode::kMean;
  fs::path out;
};

// Writes <video>_scores.svg and <video>_scores.csv (frame, score,
// ground_truth, selected), one row per original frame.
void cmd_plot_scores(const PlotArgs& args);

}  // namespace era::cli
