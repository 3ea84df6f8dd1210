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

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "era/data/splits.hpp"
#include "era/data/types.hpp"

namespace era::eval {

// Fraction of original frames a summary may cover.
inline constexpr double kSummaryRate = 0.15;

// Knapsack value of a shot: its mean frame score, or the sum over its frames.
enum class ValueMode { kMean, kSum };

std::string to_string(ValueMode mode);
ValueMode parse_value_mode(const std::string& text);

// Original frame f takes the score of the latest pick <= f; frames before the
// first pick take the first score.
Eigen::VectorXd expand_scores(const Eigen::VectorXd& scores, const std::vector<std::int64_t>& picks,
                              std::int64_t n_frames_original);

// Mean frame score per shot. The shots must tile [0, n) in order.
Eigen::VectorXd shot_scores(const Eigen::VectorXd& frame_scores, const std::vector<data::Shot>& shots);

// Exact 0/1 knapsack. Among optimal sets (values equal within 1e-9) the
// lexicographically smallest sorted index list wins.
std::vector<bool> knapsack_select(const Eigen::VectorXd& values, const std::vector<std::int64_t>& lengths,
                                  std::int64_t capacity);

// Budget in frames for a video of n original frames.
std::int64_t summary_capacity(std::int64_t n_frames_original);

// Scores are per downsampled frame.
data::FrameMask select_keyshots(const data::VideoRecord& record, const Eigen::VectorXd& scores,
                                ValueMode mode = ValueMode::kMean);
// Same, for scores already expanded to original frames.
data::FrameMask select_keyshots_original(const data::VideoRecord& record, const Eigen::VectorXd& frame_scores,
                                         ValueMode mode = ValueMode::kMean);

// Harmonic mean of precision and recall; 0 when either mask is empty or the
// masks are disjoint.
double f_measure(const data::FrameMask& machine, const data::FrameMask& user);

struct VideoScore {
  double f_avg = 0.0;
  double f_max = 0.0;
};

// Scores are per downsampled frame.
VideoScore evaluate_video(const data::VideoRecord& record, const Eigen::VectorXd& scores,
                          ValueMode mode = ValueMode::kMean);

struct VideoResult {
  std::string video_id;
  int fold = 0;
  double f_avg = 0.0;
  double f_max = 0.0;

  bool operator==(const VideoResult&) const = default;
};

struct FoldResult {
  int fold = 0;
  std::size_t n_videos = 0;
  double f_avg = 0.0;
  double f_max = 0.0;

  bool operator==(const FoldResult&) const = default;
};

// Overlapping splits may test a video in several folds, so per-video results
// are keyed by (video_id, fold). Folds without test videos are left out of
// per_fold and of the overall means.
struct EvalReport {
  std::vector<VideoResult> per_video;
  std::vector<FoldResult> per_fold;
  double f_avg = 0.0;
  double f_max = 0.0;
  std::string split_mode;
  std::uint64_t split_seed = 0;
  std::vector<std::string> checkpoint_digests;
  std::string value_mode = "mean";

  bool operator==(const EvalReport&) const = default;
};

// Per-downsampled-frame scores for one video.
using Scorer = std::function<Eigen::VectorXd(const data::Video&)>;

// scorers[k] is applied only to the test videos of fold k. Throws
// ArgumentError when the counts differ.
EvalReport evaluate_split(const data::Dataset& dataset, const data::SplitSet& splits,
                          const std::vector<Scorer>& scorers, ValueMode mode = ValueMode::kMean);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
// Header: video_id,fold,f_avg,f_max
std::string report_to_csv(const EvalReport& report);

}  // namespace era::eval
