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

#include "era/graph/stgraph.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "era/core/errors.hpp"

namespace era::graph {
namespace {

constexpr double kZeroNormReplacement = 1e-8;

void row_softmax(Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double peak = m.row(r).maxCoeff();
    m.row(r) = (m.row(r).array() - peak).exp().matrix();
    m.row(r) /= m.row(r).sum();
  }
}

Eigen::MatrixXd unit_rows(const Eigen::MatrixXd& f) {
  Eigen::MatrixXd out = f;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    double norm = out.row(r).norm();
    if (norm == 0.0) {
      out.row(r).setZero();
      out(r, 0) = kZeroNormReplacement;
      norm = kZeroNormReplacement;
    }
    out.row(r) /= norm;
  }
  return out;
}

void check_box(const Eigen::Vector4d& b) {
  if (!b.allFinite() || !(b(0) < b(2)) || !(b(1) < b(3))) {
    throw ArgumentError("degenerate box: need x1 < x2 and y1 < y2");
  }
}

}  // namespace

double iou(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  check_box(a);
  check_box(b);
  const double iw = std::max(0.0, std::min(a(2), b(2)) - std::max(a(0), b(0)));
  const double ih = std::max(0.0, std::min(a(3), b(3)) - std::max(a(1), b(1)));
  const double inter = iw * ih;
  const double area_a = (a(2) - a(0)) * (a(3) - a(1));
  const double area_b = (b(2) - b(0)) * (b(3) - b(1));
  return inter / (area_a + area_b - inter);
}

Eigen::MatrixXd build_spatial_block(const Eigen::MatrixXd& boxes) {
  if (boxes.rows() == 0) throw ArgumentError("spatial block needs at least one entity");
  if (boxes.cols() != 4) throw ArgumentError("boxes must have 4 columns");
  const Eigen::Index n = boxes.rows();
  Eigen::MatrixXd sigma(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      sigma(i, j) = sigma(j, i) = iou(boxes.row(i).transpose(), boxes.row(j).transpose());
    }
  }
  row_softmax(sigma);
  return sigma;
}

Eigen::MatrixXd build_temporal_block(const Eigen::MatrixXd& features, const Eigen::MatrixXd& next) {
  if (features.rows() == 0 || next.rows() == 0) throw ArgumentError("temporal block needs entities in both frames");
  if (features.cols() != next.cols()) {
    throw ArgumentError("entity feature widths differ: " + std::to_string(features.cols()) + " vs " +
                        std::to_string(next.cols()));
  }
  Eigen::MatrixXd cosine = unit_rows(features) * unit_rows(next).transpose();
  row_softmax(cosine);
  return cosine;
}

SpatioTemporalAdjacency assemble_adjacency(const data::FrameDetections& d) {
  SpatioTemporalAdjacency adj;
  const std::size_t frames = d.n_frames();
  adj.frame_offsets.assign(frames + 1, 0);
  for (std::size_t t = 0; t < frames; ++t) adj.frame_offsets[t + 1] = adj.frame_offsets[t] + d.count(t);
  adj.n_nodes = adj.frame_offsets.back();
  adj.node_features.resize(adj.n_nodes, d.feature_dim());
  for (std::size_t t = 0; t < frames; ++t) {
    if (d.count(t) > 0) adj.node_features.middleRows(adj.frame_offsets[t], d.count(t)) = d.features[t];
  }
  for (std::size_t t = 0; t < frames; ++t) {
    const Eigen::Index n = d.count(t);
    if (n == 0) continue;
    const Eigen::Index base = adj.frame_offsets[t];
    const Eigen::MatrixXd spatial = build_spatial_block(d.boxes[t]);
    const bool linked = t + 1 < frames && d.count(t + 1) > 0;
    Eigen::MatrixXd temporal;
    if (linked) temporal = build_temporal_block(d.features[t], d.features[t + 1]);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) adj.entries.emplace_back(base + i, base + j, spatial(i, j));
      if (linked) {
        const Eigen::Index next_base = adj.frame_offsets[t + 1];
        for (Eigen::Index j = 0; j < temporal.cols(); ++j) {
          adj.entries.emplace_back(base + i, next_base + j, temporal(i, j));
        }
      }
    }
  }
  return adj;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> SpatioTemporalAdjacency::to_sparse() const {
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(n_nodes, n_nodes);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

Eigen::MatrixXd SpatioTemporalAdjacency::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (const auto& e : entries) m(e.row(), e.col()) += e.value();
  return m;
}

void write_coordinate_list(const SpatioTemporalAdjacency& adj, std::ostream& out) {
  out << std::setprecision(17);
  for (const auto& e : adj.entries) out << e.row() << ' ' << e.col() << ' ' << e.value() << '\n';
}

}  // namespace era::graph
