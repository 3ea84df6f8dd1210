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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "era/core/errors.hpp"
#include "era/data/synthetic.hpp"
#include "era/eval/protocol.hpp"
#include "oracles.hpp"

using namespace era;
using namespace era::eval;

namespace {

std::vector<data::Shot> tile(const std::vector<std::int64_t>& lengths) {
  std::vector<data::Shot> shots;
  std::int64_t first = 0;
  for (auto l : lengths) {
    shots.push_back({first, first + l - 1});
    first += l;
  }
  return shots;
}

data::FrameMask mask_of(std::initializer_list<int> bits) {
  return data::FrameMask(bits.begin(), bits.end());
}

}  // namespace

TEST_CASE("score expansion is a step function over picks") {
  CHECK(expand_scores(Eigen::VectorXd::Constant(1, 0.3), {0}, 5) == Eigen::VectorXd::Constant(5, 0.3));
  CHECK(expand_scores(Eigen::Vector2d(1, 2), {0, 2}, 4) == Eigen::Vector4d(1, 1, 2, 2));
  Eigen::VectorXd want(5);
  want << 1, 1, 1, 2, 2;
  CHECK(expand_scores(Eigen::Vector2d(1, 2), {1, 3}, 5) == want);
  CHECK_THROWS_AS(expand_scores(Eigen::Vector2d(1, 2), {3, 1}, 5), ArgumentError);
}

TEST_CASE("shot scores are frame means") {
  CHECK(shot_scores(Eigen::VectorXd::Constant(6, 0.4), tile({2, 4})) == Eigen::Vector2d(0.4, 0.4));
  const Eigen::Vector4d s(0.1, 0.7, 0.3, 0.9);
  CHECK(shot_scores(s, tile({1, 1, 1, 1})) == s);
  CHECK(shot_scores(Eigen::Vector4d(0, 1, 1, 0), tile({2, 2})) == Eigen::Vector2d(0.5, 0.5));
  CHECK_THROWS_AS(shot_scores(s, {{0, 1}, {3, 3}}), ArgumentError);
  CHECK_THROWS_AS(shot_scores(s, tile({2, 1})), ArgumentError);
}

TEST_CASE("knapsack examples") {
  const Eigen::Vector3d v(0.9, 0.6, 0.3);
  const std::vector<std::int64_t> l{3, 4, 5};
  CHECK(knapsack_select(v, l, 12) == std::vector<bool>{true, true, true});
  CHECK(knapsack_select(v, l, 0) == std::vector<bool>{false, false, false});
  CHECK(knapsack_select(v, l, 7) == std::vector<bool>{true, true, false});
  CHECK(knapsack_select(Eigen::Vector3d(0.5, 0.5, 0.5), {10, 10, 10}, 15) == std::vector<bool>{true, false, false});
}

TEST_CASE("knapsack equals exhaustive search") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> count(1, 15), len(1, 12);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = count(rng);
    std::vector<double> values(n);
    std::vector<std::int64_t> lengths(n);
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      // Every other instance uses coarse values so ties are common.
      values[i] = trial % 2 ? val(rng) : coarse(rng) / 4.0;
      total += lengths[i] = len(rng);
    }
    const std::int64_t cap = std::uniform_int_distribution<std::int64_t>(0, total)(rng);
    const auto want = oracle::brute_force_knapsack(values, lengths, cap);
    const auto got = knapsack_select(Eigen::Map<Eigen::VectorXd>(values.data(), n), lengths, cap);
    CHECK(got == want.chosen);
  }
}

TEST_CASE("raising a selected shot's value keeps it selected") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(0.0, 1.0), bump(0.0, 0.5);
  std::uniform_int_distribution<int> len(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd v(10);
    std::vector<std::int64_t> l(10);
    for (int i = 0; i < 10; ++i) {
      v(i) = val(rng);
      l[i] = len(rng);
    }
    const auto chosen = knapsack_select(v, l, 20);
    for (int i = 0; i < 10; ++i) {
      if (!chosen[i]) continue;
      Eigen::VectorXd up = v;
      up(i) += bump(rng);
      CHECK(knapsack_select(up, l, 20)[i]);
    }
  }
}

TEST_CASE("f-measure") {
  const auto m = mask_of({1, 1, 0, 0});
  CHECK(f_measure(m, m) == 1.0);
  CHECK(f_measure(m, mask_of({0, 0, 1, 1})) == 0.0);
  const auto machine = mask_of({1, 1, 1, 1, 0, 0, 0, 0, 0});
  const auto user = mask_of({0, 0, 1, 1, 1, 1, 1, 0, 0});
  CHECK(f_measure(machine, user) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(f_measure(mask_of({0, 0}), mask_of({1, 0})) == 0.0);
  CHECK(f_measure(mask_of({1, 0}), mask_of({0, 0})) == 0.0);
  CHECK_THROWS_AS(f_measure(mask_of({1}), mask_of({1, 0})), ArgumentError);

  // Swapping roles preserves F when the masks have equal size.
  std::mt19937_64 rng(8);
  std::bernoulli_distribution bit(0.4);
  for (int trial = 0; trial < 200; ++trial) {
    data::FrameMask a(12), b(12);
    for (int i = 0; i < 12; ++i) {
      a[i] = bit(rng);
      b[i] = bit(rng);
    }
    const auto na = std::count(a.begin(), a.end(), 1), nb = std::count(b.begin(), b.end(), 1);
    if (na == nb) CHECK(f_measure(a, b) == f_measure(b, a));
  }
}

TEST_CASE("key-shot selection") {
  data::VideoRecord r;
  r.video_id = "v";
  r.n_frames_original = 100;
  r.change_points = tile({10, 10, 10, 20, 50});
  for (int f = 0; f < 100; f += 10) r.picks.push_back(f);
  CHECK(summary_capacity(100) == 15);

  // One short shot with a positive score and everything else zero.
  Eigen::VectorXd s = Eigen::VectorXd::Zero(10);
  s(1) = 0.8;
  const auto one = select_keyshots(r, s);
  CHECK(std::count(one.begin(), one.end(), 1) == 10);
  CHECK(std::all_of(one.begin() + 10, one.begin() + 20, [](auto b) { return b == 1; }));

  // Uniform scores: three 10-frame shots fit one at a time; the lowest index wins.
  const auto uniform = select_keyshots(r, Eigen::VectorXd::Constant(10, 0.5));
  CHECK(std::count(uniform.begin(), uniform.end(), 1) == 10);
  CHECK(uniform[0] == 1);

  // Hand-built scores on finer shots against the exhaustive oracle.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> len(1, 12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::int64_t> lengths;
    std::int64_t total = 0;
    while (total < 100 && lengths.size() < 14) {
      lengths.push_back(std::min<std::int64_t>(len(rng), 100 - total));
      total += lengths.back();
    }
    if (total < 100) lengths.push_back(100 - total);
    r.change_points = tile(lengths);
    Eigen::VectorXd frames(10);
    for (int i = 0; i < 10; ++i) frames(i) = u(rng);
    const auto mask = select_keyshots(r, frames);
    CHECK(std::count(mask.begin(), mask.end(), 1) <= 15);
    const Eigen::VectorXd shots = shot_scores(expand_scores(frames, r.picks, 100), r.change_points);
    const auto want = oracle::brute_force_knapsack(std::vector<double>(shots.data(), shots.data() + shots.size()),
                                                   lengths, 15);
    data::FrameMask expected(100, 0);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (want.chosen[i]) {
        std::fill(expected.begin() + r.change_points[i].first, expected.begin() + r.change_points[i].last + 1, 1);
      }
    }
    CHECK(mask == expected);
  }
}

TEST_CASE("sum value mode weights shots by length") {
  data::VideoRecord r;
  r.n_frames_original = 40;
  r.change_points = tile({2, 5, 33});
  r.picks = {0, 2, 7};
  // Mean mode prefers the short bright shot; sum mode the longer dimmer one.
  const Eigen::Vector3d s(0.9, 0.6, 0.0);
  const auto mean = select_keyshots(r, s, ValueMode::kMean);
  const auto sum = select_keyshots(r, s, ValueMode::kSum);
  CHECK(mean[0] == 1);
  CHECK(mean[2] == 0);
  CHECK(sum[0] == 0);
  CHECK(sum[2] == 1);
  CHECK(parse_value_mode("sum") == ValueMode::kSum);
  CHECK_THROWS_AS(parse_value_mode("max"), ArgumentError);
}

TEST_CASE("per-video reduction over users") {
  data::VideoRecord r;
  r.video_id = "v";
  r.n_frames_original = 20;
  r.change_points = tile({3, 17});
  r.picks = {0, 3};
  const Eigen::Vector2d s(1.0, 0.0);
  data::FrameMask exact(20, 0), disjoint(20, 0);
  std::fill(exact.begin(), exact.begin() + 3, 1);
  std::fill(disjoint.begin() + 10, disjoint.end(), 1);
  r.user_summaries = {exact};
  VideoScore v = evaluate_video(r, s);
  CHECK(v.f_avg == v.f_max);
  r.user_summaries = {disjoint, exact, disjoint};
  v = evaluate_video(r, s);
  CHECK(v.f_max == 1.0);
  CHECK(v.f_avg == doctest::Approx(1.0 / 3.0));
  r.user_summaries.clear();
  CHECK_THROWS_AS(evaluate_video(r, s), ArgumentError);
}

TEST_CASE("split evaluation") {
  data::SyntheticOptions o;
  o.n_videos = 10;
  o.feature_dim = 4;
  o.entity_dim = 2;
  const data::Dataset dataset = data::generate_synthetic(o);
  const data::SplitSet splits = data::generate_splits(data::video_ids(dataset), 5, data::SplitMode::kNonOverlapping, 1);
  const Scorer mean_feature = [](const data::Video& v) { return Eigen::VectorXd(v.record.scene_features.rowwise().mean()); };
  const EvalReport r = evaluate_split(dataset, splits, std::vector<Scorer>(5, mean_feature));
  CHECK(r.per_video.size() == 10);
  std::set<std::string> seen;
  for (const auto& v : r.per_video) {
    seen.insert(v.video_id);
    CHECK(v.f_avg >= 0.0);
    CHECK(v.f_max <= 1.0);
    CHECK(v.f_avg <= v.f_max);
    const auto& test = splits.folds[v.fold].test_ids;
    CHECK(std::find(test.begin(), test.end(), v.video_id) != test.end());
  }
  CHECK(seen.size() == 10);
  CHECK(r.per_fold.size() == 5);
  CHECK(report_from_json(report_to_json(r)) == r);
  const std::string csv = report_to_csv(r);
  CHECK(csv.rfind("video_id,fold,f_avg,f_max\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
  CHECK_THROWS_AS(evaluate_split(dataset, splits, std::vector<Scorer>(4, mean_feature)), ArgumentError);

  // One video per fold with the same score everywhere: overall equals every fold.
  data::SplitSet same;
  same.mode = data::SplitMode::kOverlapping;
  const auto ids = data::video_ids(dataset);
  for (int k = 0; k < 3; ++k) same.folds.push_back({{ids.begin() + 1, ids.end()}, {ids[0]}});
  const EvalReport s = evaluate_split(dataset, same, std::vector<Scorer>(3, mean_feature));
  for (const auto& f : s.per_fold) {
    CHECK(f.f_avg == s.f_avg);
    CHECK(f.f_max == s.f_max);
  }
}
