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
#include <Eigen/SparseCore>
#include <iosfwd>
#include <vector>

#include "era/data/types.hpp"

namespace era::graph {

// Entity graph over a whole video. Spatial blocks sit on the block diagonal,
// temporal blocks on the first block superdiagonal; everything else is zero.
struct SpatioTemporalAdjacency {
  Eigen::Index n_nodes = 0;
  // Coordinate list, row-major order.
  std::vector<Eigen::Triplet<double>> entries;
  // Nodes of frame t occupy [frame_offsets[t], frame_offsets[t + 1]).
  std::vector<Eigen::Index> frame_offsets;
  // Entity features stacked in frame order.
  Eigen::MatrixXd node_features;

  Eigen::SparseMatrix<double, Eigen::RowMajor> to_sparse() const;
  Eigen::MatrixXd to_dense() const;
  std::size_t n_frames() const { return frame_offsets.empty() ? 0 : frame_offsets.size() - 1; }
};

// Intersection over union of two (x1, y1, x2, y2) boxes. Throws ArgumentError
// for degenerate boxes.
double iou(const Eigen::Vector4d& a, const Eigen::Vector4d& b);

// Row-wise softmax of pairwise IoU, self-overlap included.
Eigen::MatrixXd build_spatial_block(const Eigen::MatrixXd& boxes);

// Row-wise softmax of cosine similarity between consecutive frames' entities.
// Zero-norm rows are replaced by 1e-8 * e_0.
Eigen::MatrixXd build_temporal_block(const Eigen::MatrixXd& features, const Eigen::MatrixXd& next_features);

// Frames without entities add no nodes and break the temporal chain.
SpatioTemporalAdjacency assemble_adjacency(const data::FrameDetections& detections);

// Debug export: one "row col value" line per stored entry.
void write_coordinate_list(const SpatioTemporalAdjacency& adjacency, std::ostream& out);

}  // namespace era::graph
