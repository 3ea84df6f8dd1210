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

#include <cstdint>
#include <vector>

#include "era/autodiff/ops.hpp"
#include "era/data/types.hpp"
#include "era/graph/stgraph.hpp"
#include "era/model/layers.hpp"

namespace era::model {

struct SummarizerConfig {
  int d_entity = 256;
  int d_scene = 1024;
  int gcn_hidden = 128;
  int gcn_layers = 3;
  int mlp_hidden = 512;
  bool use_stgcn = true;
  bool use_diff_attention = true;
  // Frame offsets used by the difference branch; only {1} is implemented.
  std::vector<int> diff_strides{1};
  std::uint64_t seed = 0;

  void validate() const;
};

// Graph convolution stack. Layer l maps H to ReLU(E H W_l) + P_l(H), where
// P_l is the identity when widths match and a learned projection otherwise.
struct GcnParams {
  std::vector<ad::Var> weights;
  std::vector<ad::Var> shortcuts;  // undefined Var where the shortcut is the identity
};

struct SummarizerParams {
  GcnParams gcn;
  ScoreMlp fusion;      // on [F_s | F_o]
  ScoreMlp difference;  // on first-order scene-feature differences
};

SummarizerParams create_summarizer_params(const SummarizerConfig& config, ParamStore& store, Rng& rng);

// Adjacency and pooling operators prepared once per video.
struct GraphInput {
  ad::SparseOperator adjacency;
  ad::Var node_features;  // [N_total x d_entity]
  std::vector<Eigen::Index> frame_offsets;
};

GraphInput prepare_graph(const graph::SpatioTemporalAdjacency& adjacency, int d_entity);
// Graph for a video when the entity branch is disabled: no nodes.
GraphInput empty_graph(Eigen::Index frames, int d_entity);
// prepare_graph on the assembled detections, or empty_graph without use_stgcn.
GraphInput graph_for(const data::FrameDetections& detections, const SummarizerConfig& config);

ad::Var gcn_forward(const GraphInput& graph, const GcnParams& params);

// Mean of each frame's node rows; frames without nodes get zero rows.
ad::Var temporal_pool(const ad::Var& embeddings, const std::vector<Eigen::Index>& frame_offsets);

// Per-frame scores in (0,1) from the concatenation [F_s | F_o]; [T x 1].
ad::Var fuse_and_score(const ad::Var& entity_features, const ad::Var& scene_features, const ScoreMlp& mlp);

// d_t = F_s[t] - F_s[t-1] with d_0 = 0, scored per frame; [T x 1].
ad::Var difference_attention(const ad::Var& scene_features, const ScoreMlp& mlp);

struct ScoreVars {
  ad::Var s_star;
  ad::Var s_diff;  // undefined when the difference branch is disabled
  ad::Var s_final;
};

struct FrameScores {
  Eigen::VectorXd s_star;
  Eigen::VectorXd s_diff;  // empty when the difference branch is disabled
  Eigen::VectorXd s_final;
};

// Scene features are taken from the record; the graph from the detections.
// Disabled branches are dropped: without the graph F_o is zero, without the
// difference branch s_final = s_star.
ScoreVars summarize_vars(const data::VideoRecord& record, const GraphInput& graph, const SummarizerConfig& config,
                         const SummarizerParams& params);
FrameScores summarize(const data::VideoRecord& record, const data::FrameDetections& detections,
                      const SummarizerConfig& config, const SummarizerParams& params);

}  // namespace era::model
