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

#include "era/data/types.hpp"

#include <algorithm>
#include <cmath>

#include "era/core/errors.hpp"

namespace era::data {
namespace {

[[noreturn]] void fail(const std::string& video_id, const std::string& what) {
  throw ValidationError("video '" + video_id + "': " + what);
}

}  // namespace

Eigen::Index FrameDetections::total_entities() const {
  Eigen::Index total = 0;
  for (const auto& b : boxes) total += b.rows();
  return total;
}

Eigen::Index FrameDetections::feature_dim() const {
  for (const auto& f : features) {
    if (f.rows() > 0) return f.cols();
  }
  return 0;
}

FrameDetections FrameDetections::empty(std::size_t n_frames, Eigen::Index feature_dim) {
  FrameDetections out;
  out.boxes.assign(n_frames, Eigen::MatrixXd(0, 4));
  out.features.assign(n_frames, Eigen::MatrixXd(0, feature_dim));
  return out;
}

void validate(const VideoRecord& r) {
  const auto& id = r.video_id;
  if (r.n_frames_original <= 0) fail(id, "n_frames must be positive");
  if (r.scene_features.rows() == 0) fail(id, "features has no rows");
  if (!r.scene_features.allFinite()) fail(id, "features contain non-finite values");
  if (static_cast<Eigen::Index>(r.picks.size()) != r.scene_features.rows()) {
    fail(id, "picks has " + std::to_string(r.picks.size()) + " entries but features has " +
                 std::to_string(r.scene_features.rows()) + " rows");
  }
  for (std::size_t i = 0; i < r.picks.size(); ++i) {
    if (r.picks[i] < 0 || r.picks[i] >= r.n_frames_original) fail(id, "pick out of range");
    if (i > 0 && r.picks[i] <= r.picks[i - 1]) fail(id, "picks not strictly increasing");
  }
  if (r.change_points.empty()) fail(id, "change_points is empty");
  std::int64_t expected = 0;
  for (const Shot& s : r.change_points) {
    if (s.first != expected || s.last < s.first) {
      fail(id, "change_points do not partition the frame range at frame " + std::to_string(expected));
    }
    expected = s.last + 1;
  }
  if (expected != r.n_frames_original) fail(id, "change_points do not cover all frames");
  if (r.user_summaries.empty()) fail(id, "no user summaries");
  for (std::size_t u = 0; u < r.user_summaries.size(); ++u) {
    const auto& mask = r.user_summaries[u];
    if (static_cast<std::int64_t>(mask.size()) != r.n_frames_original) {
      fail(id, "user summary " + std::to_string(u) + " has wrong length");
    }
    if (std::none_of(mask.begin(), mask.end(), [](std::uint8_t v) { return v != 0; })) {
      fail(id, "user summary " + std::to_string(u) + " selects no frame");
    }
  }
  if (r.ground_truth_scores && r.ground_truth_scores->size() != r.scene_features.rows()) {
    fail(id, "gtscore length differs from the number of downsampled frames");
  }
}

void validate(const FrameDetections& d, const std::string& id) {
  if (d.boxes.size() != d.features.size()) fail(id, "detection boxes/features frame counts differ");
  Eigen::Index dim = -1;
  for (std::size_t t = 0; t < d.boxes.size(); ++t) {
    const auto& b = d.boxes[t];
    const auto& f = d.features[t];
    const std::string where = "frame " + std::to_string(t) + ": ";
    if (b.rows() > 0 && b.cols() != 4) fail(id, where + "entity boxes must have 4 columns");
    if (f.rows() != b.rows()) fail(id, where + "entity feature rows differ from box rows");
    if (!b.allFinite() || !f.allFinite()) fail(id, where + "non-finite detection values");
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      if (!(b(i, 0) < b(i, 2)) || !(b(i, 1) < b(i, 3))) fail(id, where + "degenerate box");
    }
    if (f.rows() > 0) {
      if (dim >= 0 && f.cols() != dim) fail(id, where + "entity feature width changes between frames");
      dim = f.cols();
    }
  }
}

void validate(const Video& v) {
  validate(v.record);
  validate(v.detections, v.record.video_id);
  if (static_cast<Eigen::Index>(v.detections.n_frames()) != v.record.n_downsampled()) {
    fail(v.record.video_id, "detections cover " + std::to_string(v.detections.n_frames()) +
                                " frames, expected " + std::to_string(v.record.n_downsampled()));
  }
}

std::vector<std::string> video_ids(const Dataset& dataset) {
  std::vector<std::string> ids;
  ids.reserve(dataset.size());
  for (const auto& v : dataset) ids.push_back(v.record.video_id);
  return ids;
}

const Video& find_video(const Dataset& dataset, const std::string& id) {
  for (const auto& v : dataset) {
    if (v.record.video_id == id) return v;
  }
  throw ArgumentError("unknown video id '" + id + "'");
}

}  // namespace era::data
