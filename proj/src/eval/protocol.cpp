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

#include "era/eval/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "era/core/errors.hpp"

namespace era::eval {
namespace {

using nlohmann::json;

constexpr double kTieTolerance = 1e-9;

}  // namespace

std::string to_string(ValueMode mode) { return mode == ValueMode::kMean ? "mean" : "sum"; }

ValueMode parse_value_mode(const std::string& text) {
  if (text == "mean") return ValueMode::kMean;
  if (text == "sum") return ValueMode::kSum;
  throw ArgumentError("unknown value mode '" + text + "' (expected mean or sum)");
}

Eigen::VectorXd expand_scores(const Eigen::VectorXd& scores, const std::vector<std::int64_t>& picks,
                              std::int64_t n_frames_original) {
  if (picks.empty() || static_cast<Eigen::Index>(picks.size()) != scores.size()) {
    throw ArgumentError("picks and scores must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < picks.size(); ++i) {
    if (picks[i] < 0 || picks[i] >= n_frames_original || (i > 0 && picks[i] <= picks[i - 1])) {
      throw ArgumentError("picks must be strictly increasing original-frame indices");
    }
  }
  Eigen::VectorXd out(n_frames_original);
  std::size_t k = 0;
  for (std::int64_t f = 0; f < n_frames_original; ++f) {
    while (k + 1 < picks.size() && picks[k + 1] <= f) ++k;
    out(f) = scores(static_cast<Eigen::Index>(k));
  }
  return out;
}

Eigen::VectorXd shot_scores(const Eigen::VectorXd& frame_scores, const std::vector<data::Shot>& shots) {
  if (shots.empty()) throw ArgumentError("no shots");
  std::int64_t next = 0;
  for (const auto& s : shots) {
    if (s.first != next || s.last < s.first) throw ArgumentError("change points do not partition the frames");
    next = s.last + 1;
  }
  if (next != frame_scores.size()) throw ArgumentError("change points do not cover all frames");
  Eigen::VectorXd out(static_cast<Eigen::Index>(shots.size()));
  for (std::size_t i = 0; i < shots.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = frame_scores.segment(shots[i].first, shots[i].length()).mean();
  }
  return out;
}

std::vector<bool> knapsack_select(const Eigen::VectorXd& values, const std::vector<std::int64_t>& lengths,
                                  std::int64_t capacity) {
  const std::size_t n = lengths.size();
  if (static_cast<Eigen::Index>(n) != values.size()) throw ArgumentError("values and lengths differ in size");
  for (auto l : lengths) {
    if (l <= 0) throw ArgumentError("shot lengths must be positive");
  }
  capacity = std::max<std::int64_t>(capacity, 0);
  const auto cols = static_cast<std::size_t>(capacity) + 1;
  // best[i][c]: optimum over items i..n-1 with capacity c.
  std::vector<double> best((n + 1) * cols, 0.0);
  auto at = [&](std::size_t i, std::int64_t c) -> double& { return best[i * cols + static_cast<std::size_t>(c)]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::int64_t c = 0; c <= capacity; ++c) {
      double v = at(i + 1, c);
      if (lengths[i] <= c) v = std::max(v, values(static_cast<Eigen::Index>(i)) + at(i + 1, c - lengths[i]));
      at(i, c) = v;
    }
  }
  std::vector<bool> chosen(n, false);
  std::int64_t c = capacity;
  double remaining = at(0, c);
  for (std::size_t i = 0; i < n && remaining > kTieTolerance; ++i) {
    if (lengths[i] > c) continue;
    const double with = values(static_cast<Eigen::Index>(i)) + at(i + 1, c - lengths[i]);
    if (with >= at(i, c) - kTieTolerance) {
      chosen[i] = true;
      c -= lengths[i];
      remaining = at(i + 1, c);
    }
  }
  return chosen;
}

std::int64_t summary_capacity(std::int64_t n_frames_original) {
  return static_cast<std::int64_t>(std::floor(kSummaryRate * static_cast<double>(n_frames_original)));
}

data::FrameMask select_keyshots_original(const data::VideoRecord& record, const Eigen::VectorXd& frame_scores,
                                         ValueMode mode) {
  const Eigen::VectorXd per_shot = shot_scores(frame_scores, record.change_points);
  std::vector<std::int64_t> lengths;
  Eigen::VectorXd values = per_shot;
  for (std::size_t i = 0; i < record.change_points.size(); ++i) {
    lengths.push_back(record.change_points[i].length());
    if (mode == ValueMode::kSum) values(static_cast<Eigen::Index>(i)) *= static_cast<double>(lengths.back());
  }
  const std::vector<bool> chosen = knapsack_select(values, lengths, summary_capacity(record.n_frames_original));
  data::FrameMask mask(static_cast<std::size_t>(record.n_frames_original), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!chosen[i]) continue;
    const auto& s = record.change_points[i];
    std::fill(mask.begin() + s.first, mask.begin() + s.last + 1, std::uint8_t{1});
  }
  return mask;
}

data::FrameMask select_keyshots(const data::VideoRecord& record, const Eigen::VectorXd& scores, ValueMode mode) {
  return select_keyshots_original(record, expand_scores(scores, record.picks, record.n_frames_original), mode);
}

double f_measure(const data::FrameMask& machine, const data::FrameMask& user) {
  if (machine.size() != user.size()) {
    throw ArgumentError("summary lengths differ: " + std::to_string(machine.size()) + " vs " +
                        std::to_string(user.size()));
  }
  std::size_t m = 0, u = 0, overlap = 0;
  for (std::size_t i = 0; i < machine.size(); ++i) {
    const bool a = machine[i] != 0, b = user[i] != 0;
    m += a;
    u += b;
    overlap += a && b;
  }
  if (m == 0 || u == 0 || overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(m);
  const double r = static_cast<double>(overlap) / static_cast<double>(u);
  return 2.0 * p * r / (p + r);
}

VideoScore evaluate_video(const data::VideoRecord& record, const Eigen::VectorXd& scores, ValueMode mode) {
  if (record.user_summaries.empty()) {
    throw ArgumentError("video '" + record.video_id + "' has no user summaries");
  }
  const data::FrameMask machine = select_keyshots(record, scores, mode);
  VideoScore out;
  for (const auto& user : record.user_summaries) {
    const double f = f_measure(machine, user);
    out.f_avg += f;
    out.f_max = std::max(out.f_max, f);
  }
  out.f_avg /= static_cast<double>(record.user_summaries.size());
  return out;
}

EvalReport evaluate_split(const data::Dataset& dataset, const data::SplitSet& splits,
                          const std::vector<Scorer>& scorers, ValueMode mode) {
  if (scorers.size() != splits.folds.size()) {
    throw ArgumentError("expected one checkpoint per fold: " + std::to_string(splits.folds.size()) +
                        " folds, " + std::to_string(scorers.size()) + " checkpoints");
  }
  EvalReport report;
  report.split_mode = data::to_string(splits.mode);
  report.split_seed = splits.seed;
  report.value_mode = to_string(mode);
  for (std::size_t k = 0; k < splits.folds.size(); ++k) {
    if (!scorers[k]) throw ArgumentError("missing checkpoint for fold " + std::to_string(k));
    FoldResult fold{static_cast<int>(k), 0, 0.0, 0.0};
    for (const auto& id : splits.folds[k].test_ids) {
      const data::Video& video = data::find_video(dataset, id);
      const VideoScore s = evaluate_video(video.record, scorers[k](video), mode);
      report.per_video.push_back({id, static_cast<int>(k), s.f_avg, s.f_max});
      fold.f_avg += s.f_avg;
      fold.f_max += s.f_max;
      ++fold.n_videos;
    }
    if (fold.n_videos == 0) continue;
    fold.f_avg /= static_cast<double>(fold.n_videos);
    fold.f_max /= static_cast<double>(fold.n_videos);
    report.per_fold.push_back(fold);
  }
  for (const auto& f : report.per_fold) {
    report.f_avg += f.f_avg;
    report.f_max += f.f_max;
  }
  if (!report.per_fold.empty()) {
    report.f_avg /= static_cast<double>(report.per_fold.size());
    report.f_max /= static_cast<double>(report.per_fold.size());
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  json j;
  j["per_video"] = json::array();
  for (const auto& v : report.per_video) {
    j["per_video"].push_back({{"video_id", v.video_id}, {"fold", v.fold}, {"f_avg", v.f_avg}, {"f_max", v.f_max}});
  }
  j["per_fold"] = json::array();
  for (const auto& f : report.per_fold) {
    j["per_fold"].push_back({{"fold", f.fold}, {"n_videos", f.n_videos}, {"f_avg", f.f_avg}, {"f_max", f.f_max}});
  }
  j["overall"] = {{"f_avg", report.f_avg}, {"f_max", report.f_max}};
  j["metadata"] = {{"split_mode", report.split_mode},
                   {"split_seed", report.split_seed},
                   {"checkpoint_digests", report.checkpoint_digests},
                   {"value_mode", report.value_mode}};
  return j.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    EvalReport r;
    for (const auto& v : j.at("per_video")) {
      r.per_video.push_back({v.at("video_id").get<std::string>(), v.at("fold").get<int>(),
                             v.at("f_avg").get<double>(), v.at("f_max").get<double>()});
    }
    for (const auto& f : j.at("per_fold")) {
      r.per_fold.push_back({f.at("fold").get<int>(), f.at("n_videos").get<std::size_t>(),
                            f.at("f_avg").get<double>(), f.at("f_max").get<double>()});
    }
    r.f_avg = j.at("overall").at("f_avg").get<double>();
    r.f_max = j.at("overall").at("f_max").get<double>();
    const json& m = j.at("metadata");
    r.split_mode = m.at("split_mode").get<std::string>();
    r.split_seed = m.at("split_seed").get<std::uint64_t>();
    r.checkpoint_digests = m.at("checkpoint_digests").get<std::vector<std::string>>();
    r.value_mode = m.at("value_mode").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad evaluation report: ") + e.what());
  }
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << std::setprecision(17) << "video_id,fold,f_avg,f_max\n";
  for (const auto& v : report.per_video) out << v.video_id << ',' << v.fold << ',' << v.f_avg << ',' << v.f_max << '\n';
  return out.str();
}

}  // namespace era::eval
