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

#include <cmath>
#include <random>
#include <sstream>

#include "era/core/errors.hpp"
#include "era/graph/stgraph.hpp"
#include "oracles.hpp"

using namespace era;
using namespace era::graph;

namespace {

Eigen::MatrixXd boxes(std::initializer_list<std::array<double, 4>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 4);
  Eigen::Index i = 0;
  for (const auto& r : rows) m.row(i++) << r[0], r[1], r[2], r[3];
  return m;
}

}  // namespace

TEST_CASE("iou examples") {
  const Eigen::Vector4d a(0, 0, 10, 10);
  CHECK(iou(a, a) == doctest::Approx(1.0));
  CHECK(iou(a, Eigen::Vector4d(20, 20, 30, 30)) == 0.0);
  CHECK(iou(a, Eigen::Vector4d(5, 0, 15, 10)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(oracle::pixel_iou(0, 0, 10, 10, 5, 0, 15, 10) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(iou(Eigen::Vector4d(0, 0, 0, 5), a), ArgumentError);
  CHECK_THROWS_AS(iou(a, Eigen::Vector4d(0, 5, 3, 1)), ArgumentError);
}

TEST_CASE("iou matches pixel counting on random integer boxes") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pos(0, 30), len(1, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const int ax = pos(rng), ay = pos(rng), bx = pos(rng), by = pos(rng);
    const int aw = len(rng), ah = len(rng), bw = len(rng), bh = len(rng);
    const double got = iou(Eigen::Vector4d(ax, ay, ax + aw, ay + ah), Eigen::Vector4d(bx, by, bx + bw, by + bh));
    const double want = oracle::pixel_iou(ax, ay, ax + aw, ay + ah, bx, by, bx + bw, by + bh);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    const double swapped = iou(Eigen::Vector4d(bx, by, bx + bw, by + bh), Eigen::Vector4d(ax, ay, ax + aw, ay + ah));
    CHECK(got == swapped);
  }
}

TEST_CASE("spatial block") {
  CHECK(build_spatial_block(boxes({{0, 0, 4, 4}})) == Eigen::MatrixXd::Ones(1, 1));
  const Eigen::MatrixXd same = build_spatial_block(boxes({{0, 0, 4, 4}, {0, 0, 4, 4}}));
  CHECK((same.array() - 0.5).abs().maxCoeff() < 1e-15);

  const Eigen::MatrixXd b = build_spatial_block(boxes({{0, 0, 10, 10}, {5, 0, 15, 10}}));
  const auto p = oracle::softmax({1.0L, 1.0L / 3.0L});
  CHECK(std::abs(b(0, 0) - static_cast<double>(p[0])) < 1e-15);
  CHECK(std::abs(b(0, 1) - static_cast<double>(p[1])) < 1e-15);

  // Translation invariance.
  std::mt19937_64 rng(5);
  const auto d = oracle::random_detections(rng, 1, 3, 2, false);
  Eigen::MatrixXd shifted = d.boxes[0];
  shifted.col(0).array() += 17.25;
  shifted.col(2).array() += 17.25;
  shifted.col(1).array() -= 3.5;
  shifted.col(3).array() -= 3.5;
  CHECK((build_spatial_block(d.boxes[0]) - build_spatial_block(shifted)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("temporal block") {
  const Eigen::MatrixXd one = build_temporal_block(Eigen::MatrixXd::Random(3, 4), Eigen::MatrixXd::Random(1, 4));
  CHECK(one == Eigen::MatrixXd::Ones(3, 1));

  Eigen::MatrixXd next(2, 3);
  next << 1, 2, 3, 1, 2, 3;
  const Eigen::MatrixXd half = build_temporal_block(Eigen::MatrixXd::Random(2, 3), next);
  CHECK((half.array() - 0.5).abs().maxCoeff() < 1e-15);

  Eigen::MatrixXd cur(1, 2), nx(2, 2);
  cur << 1, 0;
  nx << 1, 0, 0, 1;
  const Eigen::MatrixXd t = build_temporal_block(cur, nx);
  const double e = std::exp(1.0);
  CHECK(t(0, 0) == doctest::Approx(e / (e + 1)).epsilon(1e-15));
  CHECK(t(0, 1) == doctest::Approx(1 / (e + 1)).epsilon(1e-15));

  CHECK_THROWS_AS(build_temporal_block(Eigen::MatrixXd::Ones(1, 2), Eigen::MatrixXd::Ones(1, 3)), ArgumentError);

  // A zero row is treated as a tiny vector along the first axis.
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 2);
  const Eigen::MatrixXd z = build_temporal_block(zero, nx);
  CHECK(z(0, 0) == doctest::Approx(e / (e + 1)));
  CHECK(std::isfinite(z.sum()));
}

TEST_CASE("adjacency layout for small shapes") {
  data::FrameDetections d;
  d.boxes = {boxes({{0, 0, 10, 10}, {5, 0, 15, 10}})};
  d.features = {Eigen::MatrixXd::Random(2, 3)};
  SpatioTemporalAdjacency a = assemble_adjacency(d);
  CHECK((a.to_dense() - build_spatial_block(d.boxes[0])).cwiseAbs().maxCoeff() == 0.0);

  d.boxes.push_back(boxes({{1, 1, 4, 4}}));
  d.features.push_back(Eigen::MatrixXd::Random(1, 3));
  a = assemble_adjacency(d);
  const Eigen::MatrixXd e = a.to_dense();
  REQUIRE(e.rows() == 3);
  CHECK(a.frame_offsets == std::vector<Eigen::Index>{0, 2, 3});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const bool expected_nonzero = (i < 2 && j < 2) || (i < 2 && j == 2) || (i == 2 && j == 2);
      CHECK((e(i, j) != 0.0) == expected_nonzero);
    }
  }
  CHECK(e(2, 2) == 1.0);
  CHECK(e(0, 2) == 1.0);
  CHECK(e(1, 2) == 1.0);

  data::FrameDetections empty = data::FrameDetections::empty(4, 3);
  a = assemble_adjacency(empty);
  CHECK(a.n_nodes == 0);
  CHECK(a.to_dense().size() == 0);
  CHECK(a.frame_offsets == std::vector<Eigen::Index>(5, 0));
}

TEST_CASE("empty frames break the temporal chain") {
  data::FrameDetections d;
  d.boxes = {boxes({{0, 0, 5, 5}}), Eigen::MatrixXd(0, 4), boxes({{0, 0, 5, 5}})};
  d.features = {Eigen::MatrixXd::Ones(1, 2), Eigen::MatrixXd(0, 2), Eigen::MatrixXd::Ones(1, 2)};
  const Eigen::MatrixXd e = assemble_adjacency(d).to_dense();
  CHECK(e == Eigen::MatrixXd::Identity(2, 2));
}

TEST_CASE("adjacency matches the reference on random small videos") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> frames(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_detections(rng, frames(rng), 3, 4, true);
    const SpatioTemporalAdjacency a = assemble_adjacency(d);
    const Eigen::MatrixXd ref = oracle::reference_adjacency(d);
    const Eigen::MatrixXd got = a.to_dense();
    REQUIRE(got.rows() == ref.rows());
    if (got.size() == 0) continue;
    CHECK((got - ref).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((got.rowwise().sum() - oracle::expected_row_sums(d)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(got.minCoeff() >= 0.0);
  }
}

TEST_CASE("permuting entities permutes the adjacency") {
  std::mt19937_64 rng(8);
  const auto d = oracle::random_detections(rng, 3, 3, 4, false);
  data::FrameDetections p = d;
  // Reverse entity order in every frame.
  std::vector<Eigen::Index> perm;
  Eigen::Index offset = 0;
  for (std::size_t t = 0; t < d.n_frames(); ++t) {
    const Eigen::Index n = d.count(t);
    p.boxes[t] = d.boxes[t].colwise().reverse();
    p.features[t] = d.features[t].colwise().reverse();
    for (Eigen::Index i = 0; i < n; ++i) perm.push_back(offset + n - 1 - i);
    offset += n;
  }
  const Eigen::MatrixXd e = assemble_adjacency(d).to_dense();
  const Eigen::MatrixXd f = assemble_adjacency(p).to_dense();
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) CHECK(std::abs(f(i, j) - e(perm[i], perm[j])) < 1e-15);
  }
}

TEST_CASE("coordinate list export") {
  data::FrameDetections d;
  d.boxes = {boxes({{0, 0, 4, 4}})};
  d.features = {Eigen::MatrixXd::Ones(1, 2)};
  std::ostringstream out;
  write_coordinate_list(assemble_adjacency(d), out);
  CHECK(out.str() == "0 0 1\n");
}
