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

#include "era/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <random>
#include <sstream>

#include "era/core/digest.hpp"
#include "era/core/errors.hpp"
#include "era/core/rng.hpp"
#include "era/data/container.hpp"
#include "era/model/checkpoint.hpp"
#include "era/train/era_model.hpp"
#include "era/train/trainer.hpp"

namespace era::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create directory " + dir.string());
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

fs::path fold_dir(const fs::path& root, std::size_t k) { return root / ("fold_" + std::to_string(k)); }

std::pair<std::string, std::string> split_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ArgumentError("--set expects key=value, got '" + text + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

struct FoldProgress {
  int completed_epochs = 0;
  int best_epoch = 0;
  double best_total = 0.0;
};

void save_progress(const fs::path& dir, const FoldProgress& p) {
  json j{{"completed_epochs", p.completed_epochs}, {"best_epoch", p.best_epoch}, {"best_total", p.best_total}};
  write_text(dir / "progress.json", j.dump(2) + "\n");
}

FoldProgress load_progress(const fs::path& dir) {
  try {
    const json j = json::parse(read_text(dir / "progress.json"));
    return {j.at("completed_epochs").get<int>(), j.at("best_epoch").get<int>(), j.at("best_total").get<double>()};
  } catch (const json::exception& e) {
    throw ParseError("bad progress file in " + dir.string() + ": " + e.what());
  }
}

void save_fold_state(const fs::path& dir, const train::Trainer& trainer, const train::FitResult& result,
                     int completed_epochs) {
  model::save_checkpoint(result.best, dir / "best.ckpt");
  model::save_checkpoint(result.last, dir / "last.ckpt");
  model::save_checkpoint(trainer.optimizer_state(), dir / "optimizer.ckpt");
  save_progress(dir, {completed_epochs, result.best_epoch, result.best_total});
}

std::string svg_polyline(const Eigen::VectorXd& y, double width, double height, double margin,
                         const std::string& color) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  const double n = static_cast<double>(std::max<Eigen::Index>(y.size() - 1, 1));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double px = margin + (width - 2 * margin) * static_cast<double>(i) / n;
    const double py = height - margin - (height - 2 * margin) * std::clamp(y(i), 0.0, 1.0);
    out << px << ',' << py << ' ';
  }
  out << "\"/>\n";
  return out.str();
}

}  // namespace

void write_manifest(const RunManifest& m, const fs::path& out_dir) {
  json j{{"command", m.command},
         {"config_digest", m.config_digest},
         {"dataset_digest", m.dataset_digest},
         {"split_digest", m.split_digest},
         {"seed", m.seed},
         {"config", m.config},
         {"artifacts", m.artifacts},
         {"wall_clock_seconds", m.wall_clock_seconds}};
  write_text(out_dir / kManifestName, j.dump(2) + "\n");
}

RunManifest read_manifest(const fs::path& out_dir) {
  try {
    const json j = json::parse(read_text(out_dir / kManifestName));
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config_digest = j.at("config_digest").get<std::string>();
    m.dataset_digest = j.at("dataset_digest").get<std::string>();
    m.split_digest = j.at("split_digest").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError("bad run manifest in " + out_dir.string() + ": " + e.what());
  }
}

fs::path resolve_dataset(const std::optional<fs::path>& flag) {
  if (flag) return *flag;
  if (const char* dir = std::getenv("ERA_DATA_DIR"); dir && *dir) return fs::path(dir) / "dataset.h5";
  throw ArgumentError("no dataset: pass --dataset or set ERA_DATA_DIR");
}

fs::path cmd_synth(const SynthArgs& args) {
  const auto start = Clock::now();
  ensure_dir(args.out);
  const fs::path path = args.out / "dataset.h5";
  data::save_dataset(data::generate_synthetic(args.options), path);
  const auto& o = args.options;
  RunManifest m;
  m.command = "synth";
  m.dataset_digest = sha256_file(path);
  m.seed = o.seed;
  m.config = {{"n_videos", std::to_string(o.n_videos)},   {"t_min", std::to_string(o.t_min)},
              {"t_max", std::to_string(o.t_max)},         {"n_users", std::to_string(o.n_users)},
              {"entity_rate", std::to_string(o.entity_rate)}, {"feature_dim", std::to_string(o.feature_dim)},
              {"entity_dim", std::to_string(o.entity_dim)}, {"subsample", std::to_string(o.subsample)},
              {"seed", std::to_string(o.seed)}};
  m.artifacts = {"dataset.h5"};
  m.wall_clock_seconds = seconds_since(start);
  write_manifest(m, args.out);
  return path;
}

fs::path cmd_generate_splits(const SplitArgs& args) {
  const auto start = Clock::now();
  const data::Dataset dataset = data::load_dataset(args.dataset);
  const data::SplitSet splits = data::generate_splits(data::video_ids(dataset), args.folds, args.mode, args.seed);
  ensure_dir(args.out);
  const fs::path path = args.out / "splits.json";
  data::save_splits(splits, path);
  RunManifest m;
  m.command = "splits";
  m.dataset_digest = sha256_file(args.dataset);
  m.split_digest = sha256_file(path);
  m.seed = args.seed;
  m.config = {{"folds", std::to_string(args.folds)}, {"mode", data::to_string(args.mode)}};
  m.artifacts = {"splits.json"};
  m.wall_clock_seconds = seconds_since(start);
  write_manifest(m, args.out);
  return path;
}

train::ExperimentConfig effective_config(const TrainArgs& args) {
  train::ExperimentConfig config;
  if (args.config) {
    config = train::load_config(*args.config);
  } else if (args.resume && fs::exists(*args.resume / "config.txt")) {
    config = train::load_config(*args.resume / "config.txt");
  }
  std::map<std::string, std::string> overrides;
  for (const auto& text : args.overrides) overrides.insert_or_assign(split_override(text).first, split_override(text).second);
  if (args.seed) overrides["seed"] = std::to_string(*args.seed);
  config.apply(overrides);
  config.validate();
  return config;
}

void cmd_train(const TrainArgs& args) {
  const auto start = Clock::now();
  const train::ExperimentConfig config = effective_config(args);
  const data::Dataset dataset = data::load_dataset(args.dataset);
  const data::SplitSet splits = data::load_splits(args.splits);
  data::validate_splits(splits, data::video_ids(dataset));

  std::vector<std::size_t> folds;
  if (args.fold) {
    if (*args.fold < 0 || static_cast<std::size_t>(*args.fold) >= splits.folds.size()) {
      throw ArgumentError("fold " + std::to_string(*args.fold) + " out of range (split has " +
                          std::to_string(splits.folds.size()) + " folds)");
    }
    folds.push_back(static_cast<std::size_t>(*args.fold));
  } else {
    for (std::size_t k = 0; k < splits.folds.size(); ++k) folds.push_back(k);
  }

  ensure_dir(args.out);
  write_text(args.out / "config.txt", config.to_text());
  RunManifest m;
  m.command = "train";
  m.config_digest = config.digest();
  m.dataset_digest = sha256_file(args.dataset);
  m.split_digest = sha256_file(args.splits);
  m.seed = config.train.seed;
  m.config = config.to_key_values();
  m.artifacts = {"config.txt"};

  for (std::size_t k : folds) {
    const fs::path dir = fold_dir(args.out, k);
    ensure_dir(dir);
    train::EraModel model(config);
    train::ResumePoint point;
    const train::ResumePoint* resume = nullptr;
    std::vector<std::string> kept_log;
    if (args.resume && fs::exists(fold_dir(*args.resume, k) / "progress.json")) {
      const fs::path from = fold_dir(*args.resume, k);
      const FoldProgress p = load_progress(from);
      model.load(model::load_checkpoint(from / "last.ckpt"));
      point.completed_epochs = p.completed_epochs;
      point.optimizer = model::load_checkpoint(from / "optimizer.ckpt");
      point.best = model::load_checkpoint(from / "best.ckpt");
      point.best_epoch = p.best_epoch;
      point.best_total = p.best_total;
      resume = &point;
      std::istringstream lines(read_text(from / "log.jsonl"));
      for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && train::parse_log_line(line).epoch <= p.completed_epochs) kept_log.push_back(line);
      }
    }

    std::ofstream log(dir / "log.jsonl", std::ios::binary);
    if (!log) throw std::runtime_error("cannot write " + (dir / "log.jsonl").string());
    for (const auto& line : kept_log) log << line << '\n';
    train::FitOptions options;
    options.on_step = [&](const train::StepRecord& r) { log << train::to_log_line(r) << '\n'; };
    options.on_epoch_end = [&](int epoch, const train::Trainer& trainer, const train::FitResult& progress) {
      log.flush();
      save_fold_state(dir, trainer, progress, epoch);
    };
    const train::FitResult result =
        train::fit_model(model, dataset, splits.folds[k].train_ids, options, resume);
    log.close();
    if (!log) throw std::runtime_error("cannot write " + (dir / "log.jsonl").string());
    if (!fs::exists(dir / "progress.json")) {
      // Nothing left to train: carry the resumed state over unchanged.
      model::save_checkpoint(result.best, dir / "best.ckpt");
      model::save_checkpoint(result.last, dir / "last.ckpt");
      model::save_checkpoint(point.optimizer, dir / "optimizer.ckpt");
      save_progress(dir, {point.completed_epochs, result.best_epoch, result.best_total});
    }
    const std::string prefix = dir.filename().string() + "/";
    for (const char* name : {"best.ckpt", "last.ckpt", "optimizer.ckpt", "progress.json", "log.jsonl"}) {
      m.artifacts.push_back(prefix + name);
    }
  }
  m.wall_clock_seconds = seconds_since(start);
  write_manifest(m, args.out);
}

eval::Scorer random_scorer(std::uint64_t seed) {
  return [seed](const data::Video& video) {
    Rng rng = substream(seed, "baseline.random", fnv1a64(video.record.video_id));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd s(video.record.n_downsampled());
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = unit(rng);
    return s;
  };
}

eval::EvalReport cmd_evaluate(const EvaluateArgs& args) {
  const auto start = Clock::now();
  const data::Dataset dataset = data::load_dataset(args.dataset);
  const data::SplitSet splits = data::load_splits(args.splits);
  data::validate_splits(splits, data::video_ids(dataset));

  std::vector<eval::Scorer> scorers;
  std::vector<std::string> digests;
  std::string config_digest;
  for (std::size_t k = 0; k < splits.folds.size(); ++k) {
    const fs::path path = fold_dir(args.checkpoints, k) / (args.which + ".ckpt");
    if (!fs::exists(path)) {
      throw ArgumentError("no checkpoint for fold " + std::to_string(k) + " (expected " + path.string() + ")");
    }
    auto model = std::make_shared<train::EraModel>(train::model_from_checkpoint(model::load_checkpoint(path)));
    config_digest = model->config().digest();
    digests.push_back(sha256_file(path));
    scorers.push_back([model](const data::Video& video) { return model->score(video).s_final; });
  }
  eval::EvalReport report = eval::evaluate_split(dataset, splits, scorers, args.value_mode);
  report.checkpoint_digests = digests;

  ensure_dir(args.out);
  write_text(args.out / "report.json", eval::report_to_json(report));
  write_text(args.out / "report.csv", eval::report_to_csv(report));
  RunManifest m;
  m.command = "evaluate";
  m.config_digest = config_digest;
  m.dataset_digest = sha256_file(args.dataset);
  m.split_digest = sha256_file(args.splits);
  m.seed = args.seed;
  m.config = {{"checkpoint", args.which}, {"value_mode", eval::to_string(args.value_mode)}};
  m.artifacts = {"report.json", "report.csv"};
  if (args.baseline) {
    if (*args.baseline != "random") throw ArgumentError("unknown baseline '" + *args.baseline + "'");
    const std::vector<eval::Scorer> random(splits.folds.size(), random_scorer(args.seed));
    const eval::EvalReport baseline = eval::evaluate_split(dataset, splits, random, args.value_mode);
    write_text(args.out / "baseline_random.json", eval::report_to_json(baseline));
    write_text(args.out / "baseline_random.csv", eval::report_to_csv(baseline));
    m.config["baseline"] = *args.baseline;
    m.artifacts.push_back("baseline_random.json");
    m.artifacts.push_back("baseline_random.csv");
  }
  m.wall_clock_seconds = seconds_since(start);
  write_manifest(m, args.out);
  return report;
}

void cmd_plot_scores(const PlotArgs& args) {
  const auto start = Clock::now();
  const data::Dataset dataset = data::load_dataset(args.dataset);
  const data::Video& video = data::find_video(dataset, args.video_id);
  const train::EraModel model = train::model_from_checkpoint(model::load_checkpoint(args.checkpoint));
  const data::VideoRecord& r = video.record;
  const Eigen::VectorXd scores = model.score(video).s_final;
  const Eigen::VectorXd frames = eval::expand_scores(scores, r.picks, r.n_frames_original);
  const data::FrameMask mask = eval::select_keyshots(r, scores, args.value_mode);
  std::optional<Eigen::VectorXd> truth;
  if (r.ground_truth_scores) truth = eval::expand_scores(*r.ground_truth_scores, r.picks, r.n_frames_original);

  std::ostringstream csv;
  csv << std::setprecision(17) << "frame,score,ground_truth,selected\n";
  for (std::int64_t f = 0; f < r.n_frames_original; ++f) {
    csv << f << ',' << frames(f) << ',';
    if (truth) csv << (*truth)(f);
    csv << ',' << int(mask[static_cast<std::size_t>(f)]) << '\n';
  }

  constexpr double width = 1000.0, height = 300.0, margin = 20.0;
  const double step = (width - 2 * margin) / static_cast<double>(std::max<std::int64_t>(r.n_frames_original - 1, 1));
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2) << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::int64_t f = 0; f < r.n_frames_original;) {
    if (!mask[static_cast<std::size_t>(f)]) {
      ++f;
      continue;
    }
    std::int64_t g = f;
    while (g + 1 < r.n_frames_original && mask[static_cast<std::size_t>(g + 1)]) ++g;
    svg << "<rect class=\"selected\" x=\"" << margin + step * static_cast<double>(f) << "\" y=\"" << margin
        << "\" width=\"" << std::max(step * static_cast<double>(g - f), 1.0) << "\" height=\""
        << height - 2 * margin << "\" fill=\"#f4c542\" fill-opacity=\"0.4\" data-first=\"" << f
        << "\" data-last=\"" << g << "\"/>\n";
    f = g + 1;
  }
  if (truth) svg << svg_polyline(*truth, width, height, margin, "#888888");
  svg << svg_polyline(frames, width, height, margin, "#1f5fbf");
  svg << "<text x=\"" << margin << "\" y=\"14\" font-size=\"12\" font-family=\"sans-serif\">" << r.video_id
      << "</text>\n</svg>\n";

  ensure_dir(args.out);
  const std::string stem = r.video_id + "_scores";
  write_text(args.out / (stem + ".csv"), csv.str());
  write_text(args.out / (stem + ".svg"), svg.str());
  RunManifest m;
  m.command = "plot";
  m.config_digest = model.config().digest();
  m.dataset_digest = sha256_file(args.dataset);
  m.seed = model.config().train.seed;
  m.config = {{"video", r.video_id}, {"checkpoint", args.checkpoint.string()},
              {"value_mode", eval::to_string(args.value_mode)}};
  m.artifacts = {stem + ".csv", stem + ".svg"};
  m.wall_clock_seconds = seconds_since(start);
  write_manifest(m, args.out);
}

}  // namespace era::cli
