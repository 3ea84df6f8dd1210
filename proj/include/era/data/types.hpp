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
#include <optional>
#include <string>
#include <vector>

namespace era::data {

// Per-frame 0/1 selection over original frames.
using FrameMask = std::vector<std::uint8_t>;

// Inclusive range of original frames forming one shot.
struct Shot {
  std::int64_t first = 0;
  std::int64_t last = 0;

  std::int64_t length() const { return last - first + 1; }
  bool operator==(const Shot&) const = default;
};

struct VideoRecord {
  std::string video_id;
  // One row per downsampled frame.
  Eigen::MatrixXd scene_features;
  std::int64_t n_frames_original = 0;
  // Original-frame index of each downsampled frame, strictly increasing.
  std::vector<std::int64_t> picks;
  std::vector<Shot> change_points;
  std::vector<FrameMask> user_summaries;
  std::optional<Eigen::VectorXd> ground_truth_scores;

  Eigen::Index n_downsampled() const { return scene_features.rows(); }
};

// Entity boxes (x1, y1, x2, y2) and appearance vectors per downsampled frame.
struct FrameDetections {
  std::vector<Eigen::MatrixXd> boxes;
  std::vector<Eigen::MatrixXd> features;

  std::size_t n_frames() const { return boxes.size(); }
  Eigen::Index count(std::size_t frame) const { return boxes[frame].rows(); }
  Eigen::Index total_entities() const;
  // Feature width of the first non-empty frame, or 0 when every frame is empty.
  Eigen::Index feature_dim() const;

  static FrameDetections empty(std::size_t n_frames, Eigen::Index feature_dim);
};

struct Video {
  VideoRecord record;
  FrameDetections detections;
};

using Dataset = std::vector<Video>;

// Throw ValidationError naming the video and the violated invariant.
void validate(const VideoRecord& record);
void validate(const FrameDetections& detections, const std::string& video_id);
void validate(const Video& video);

std::vector<std::string> video_ids(const Dataset& dataset);
const Video& find_video(const Dataset& dataset, const std::string& id);

}  // namespace era::data
