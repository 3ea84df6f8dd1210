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

#include "era/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "era/core/errors.hpp"
#include "era/core/rng.hpp"

namespace era::data {
namespace {

constexpr double kFrameWidth = 320.0;
constexpr double kFrameHeight = 240.0;

double as_f32(double v) { return static_cast<double>(static_cast<float>(v)); }

Eigen::MatrixXd round_f32(Eigen::MatrixXd m) { return m.unaryExpr(&as_f32); }

struct ShotPlan {
  int first = 0;  // downsampled frames, inclusive
  int last = 0;
  bool key = false;
  int prototype = 0;
};

std::vector<ShotPlan> plan_shots(int n_frames, Rng& rng) {
  // Every shot individually fits the 15% budget.
  const int max_len = std::clamp(static_cast<int>(std::floor(0.15 * n_frames)), 1, 5);
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::vector<ShotPlan> shots;
  for (int start = 0; start < n_frames;) {
    const int len = std::min(len_dist(rng), n_frames - start);
    shots.push_back({start, start + len - 1, false, 0});
    start += len;
  }
  return shots;
}

Eigen::RowVectorXd nonneg_prototype(int dim, double amplitude, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::RowVectorXd p(dim);
  for (int i = 0; i < dim; ++i) p(i) = amplitude * std::abs(normal(rng));
  return p;
}

Video make_video(const SyntheticOptions& o, int index) {
  Rng rng = substream(o.seed, "synthetic.video", static_cast<std::uint64_t>(index));
  std::uniform_int_distribution<int> t_dist(o.t_min, o.t_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int n_down = t_dist(rng);
  const std::int64_t n_orig = static_cast<std::int64_t>(n_down) * o.subsample;
  const std::int64_t budget = static_cast<std::int64_t>(std::floor(0.15 * static_cast<double>(n_orig)));

  std::vector<ShotPlan> shots = plan_shots(n_down, rng);
  auto orig_len = [&](const ShotPlan& s) { return static_cast<std::int64_t>(s.last - s.first + 1) * o.subsample; };

  // Plant key shots in random order until the budget is filled.
  std::vector<std::size_t> order(shots.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::int64_t used = 0;
  for (std::size_t i : order) {
    if (used + orig_len(shots[i]) <= budget) {
      shots[i].key = true;
      used += orig_len(shots[i]);
    }
  }

  const int n_background = 3;
  std::vector<Eigen::RowVectorXd> background;
  for (int b = 0; b < n_background; ++b) background.push_back(nonneg_prototype(o.feature_dim, 0.3, rng));
  std::vector<Eigen::RowVectorXd> key_protos;
  for (auto& s : shots) {
    if (s.key) {
      s.prototype = static_cast<int>(key_protos.size());
      key_protos.push_back(nonneg_prototype(o.feature_dim, 1.0, rng));
    } else {
      s.prototype = std::uniform_int_distribution<int>(0, n_background - 1)(rng);
    }
  }

  Video video;
  VideoRecord& r = video.record;
  r.video_id = "video_" + std::to_string(index + 1);
  r.n_frames_original = n_orig;
  r.scene_features.resize(n_down, o.feature_dim);
  Eigen::VectorXd gt(n_down);
  for (const auto& s : shots) {
    const Eigen::RowVectorXd& proto = s.key ? key_protos[static_cast<std::size_t>(s.prototype)]
                                            : background[static_cast<std::size_t>(s.prototype)];
    for (int t = s.first; t <= s.last; ++t) {
      for (int d = 0; d < o.feature_dim; ++d) {
        r.scene_features(t, d) = std::max(0.0, proto(d) + 0.05 * normal(rng));
      }
      gt(t) = s.key ? 0.8 + 0.2 * unit(rng) : 0.3 * unit(rng);
    }
    r.change_points.push_back({static_cast<std::int64_t>(s.first) * o.subsample,
                               static_cast<std::int64_t>(s.last + 1) * o.subsample - 1});
  }
  r.scene_features = round_f32(std::move(r.scene_features));
  r.ground_truth_scores = round_f32(gt);
  for (int t = 0; t < n_down; ++t) r.picks.push_back(static_cast<std::int64_t>(t) * o.subsample);

  // Users keep most planted shots and occasionally swap one for another shot.
  for (int u = 0; u < o.n_users; ++u) {
    std::vector<bool> chosen(shots.size(), false);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < shots.size(); ++i) {
      if (shots[i].key && unit(rng) >= 0.25) {
        chosen[i] = true;
        total += orig_len(shots[i]);
      }
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      if (!chosen[i] && !shots[i].key && unit(rng) < 0.3 && total + orig_len(shots[i]) <= budget) {
        chosen[i] = true;
        total += orig_len(shots[i]);
      }
    }
    if (total == 0) chosen[order.front()] = true;
    FrameMask mask(static_cast<std::size_t>(n_orig), 0);
    for (std::size_t i = 0; i < shots.size(); ++i) {
      if (!chosen[i]) continue;
      for (std::int64_t f = static_cast<std::int64_t>(shots[i].first) * o.subsample;
           f < static_cast<std::int64_t>(shots[i].last + 1) * o.subsample; ++f) {
        mask[static_cast<std::size_t>(f)] = 1;
      }
    }
    r.user_summaries.push_back(std::move(mask));
  }

  // Entities: a few tracked objects per shot drifting across frames. In key
  // shots they cluster and overlap.
  FrameDetections& d = video.detections;
  d = FrameDetections::empty(static_cast<std::size_t>(n_down), o.entity_dim);
  for (const auto& s : shots) {
    const int n_tracks = s.key ? 3 : 2;
    std::vector<Eigen::RowVectorXd> identity;
    std::vector<Eigen::Vector4d> anchor;
    const double cx = 80.0 + 160.0 * unit(rng);
    const double cy = 60.0 + 120.0 * unit(rng);
    for (int k = 0; k < n_tracks; ++k) {
      Eigen::RowVectorXd id(o.entity_dim);
      for (int j = 0; j < o.entity_dim; ++j) id(j) = normal(rng);
      identity.push_back(id);
      const double spread = s.key ? 15.0 : 100.0;
      const double x = std::clamp(cx + spread * normal(rng), 0.0, kFrameWidth - 60.0);
      const double y = std::clamp(cy + spread * normal(rng), 0.0, kFrameHeight - 60.0);
      const double w = 20.0 + 40.0 * unit(rng);
      const double h = 20.0 + 40.0 * unit(rng);
      anchor.emplace_back(x, y, x + w, y + h);
    }
    for (int t = s.first; t <= s.last; ++t) {
      const auto frame = static_cast<std::size_t>(t);
      if (!(unit(rng) < o.entity_rate)) continue;
      const int n = std::uniform_int_distribution<int>(1, n_tracks)(rng);
      Eigen::MatrixXd boxes(n, 4);
      Eigen::MatrixXd feats(n, o.entity_dim);
      for (int k = 0; k < n; ++k) {
        const double dx = 2.0 * normal(rng);
        const double dy = 2.0 * normal(rng);
        anchor[static_cast<std::size_t>(k)] += Eigen::Vector4d(dx, dy, dx, dy);
        boxes.row(k) = anchor[static_cast<std::size_t>(k)].transpose();
        for (int j = 0; j < o.entity_dim; ++j) {
          feats(k, j) = identity[static_cast<std::size_t>(k)](j) + 0.1 * normal(rng);
        }
      }
      d.boxes[frame] = round_f32(std::move(boxes));
      d.features[frame] = round_f32(std::move(feats));
    }
  }
  return video;
}

}  // namespace

Dataset generate_synthetic(const SyntheticOptions& o) {
  if (o.n_videos < 1) throw ArgumentError("n_videos must be at least 1");
  if (o.t_min < 10 || o.t_max < o.t_min) throw ArgumentError("t_range must satisfy 10 <= min <= max");
  if (o.n_users < 1) throw ArgumentError("n_users must be at least 1");
  if (!(o.entity_rate >= 0.0 && o.entity_rate <= 1.0)) throw ArgumentError("entity_rate must lie in [0, 1]");
  if (o.feature_dim < 1 || o.entity_dim < 1 || o.subsample < 1) throw ArgumentError("dimensions must be positive");
  Dataset out;
  out.reserve(static_cast<std::size_t>(o.n_videos));
  for (int v = 0; v < o.n_videos; ++v) {
    out.push_back(make_video(o, v));
    validate(out.back());
  }
  return out;
}

}  // namespace era::data
