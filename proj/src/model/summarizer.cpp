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

#include "era/model/summarizer.hpp"

#include <string>

#include "era/core/errors.hpp"

namespace era::model {
namespace {

Eigen::VectorXd column(const ad::Var& v) { return v.value().col(0); }

}  // namespace

void SummarizerConfig::validate() const {
  if (d_entity < 1 || d_scene < 1 || gcn_hidden < 1 || mlp_hidden < 1) {
    throw ArgumentError("summarizer dimensions must be positive");
  }
  if (gcn_layers < 1) throw ArgumentError("gcn_layers must be at least 1");
  if (diff_strides != std::vector<int>{1}) throw ArgumentError("only diff_strides = [1] is supported");
}

SummarizerParams create_summarizer_params(const SummarizerConfig& c, ParamStore& store, Rng& rng) {
  c.validate();
  SummarizerParams p;
  Eigen::Index in = c.d_entity;
  for (int l = 0; l < c.gcn_layers; ++l) {
    const std::string name = "summarizer.gcn." + std::to_string(l);
    p.gcn.weights.push_back(store.create(name + ".weight", glorot_uniform(in, c.gcn_hidden, rng)));
    if (in != c.gcn_hidden) {
      p.gcn.shortcuts.push_back(store.create(name + ".shortcut", glorot_uniform(in, c.gcn_hidden, rng)));
    } else {
      p.gcn.shortcuts.emplace_back();
    }
    in = c.gcn_hidden;
  }
  p.fusion = ScoreMlp::create(store, "summarizer.fusion", c.d_scene + c.gcn_hidden, c.mlp_hidden, rng);
  p.difference = ScoreMlp::create(store, "summarizer.difference", c.d_scene, c.mlp_hidden, rng);
  return p;
}

GraphInput prepare_graph(const graph::SpatioTemporalAdjacency& adjacency, int d_entity) {
  GraphInput g;
  g.adjacency = ad::SparseOperator(adjacency.to_sparse());
  g.frame_offsets = adjacency.frame_offsets;
  if (adjacency.n_nodes == 0) {
    g.node_features = ad::Var(ad::Matrix(0, d_entity));
  } else {
    if (adjacency.node_features.cols() != d_entity) {
      throw ArgumentError("entity features have width " + std::to_string(adjacency.node_features.cols()) +
                          ", model expects " + std::to_string(d_entity));
    }
    g.node_features = ad::Var(adjacency.node_features);
  }
  return g;
}

GraphInput empty_graph(Eigen::Index frames, int d_entity) {
  GraphInput g;
  g.adjacency = ad::SparseOperator(ad::SparseMatrix(0, 0));
  g.node_features = ad::Var(ad::Matrix(0, d_entity));
  g.frame_offsets.assign(static_cast<std::size_t>(frames) + 1, 0);
  return g;
}

GraphInput graph_for(const data::FrameDetections& detections, const SummarizerConfig& config) {
  if (!config.use_stgcn) return empty_graph(static_cast<Eigen::Index>(detections.n_frames()), config.d_entity);
  return prepare_graph(graph::assemble_adjacency(detections), config.d_entity);
}

ad::Var gcn_forward(const GraphInput& graph, const GcnParams& params) {
  using namespace ad;
  if (params.weights.empty() || params.weights.size() != params.shortcuts.size()) {
    throw ArgumentError("malformed GCN parameters");
  }
  if (graph.adjacency.rows() != graph.node_features.rows()) {
    throw ArgumentError("adjacency and node feature row counts differ");
  }
  Var h = graph.node_features;
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    const Var& w = params.weights[l];
    if (h.cols() != w.rows()) {
      throw ArgumentError("GCN layer " + std::to_string(l) + " expects width " + std::to_string(w.rows()) +
                          ", got " + std::to_string(h.cols()));
    }
    const Var conv = relu(matmul(spmm(graph.adjacency, h), w));
    const Var skip = params.shortcuts[l].defined() ? matmul(h, params.shortcuts[l]) : h;
    if (skip.cols() != conv.cols()) throw ArgumentError("identity shortcut with mismatched widths");
    h = add(conv, skip);
  }
  return h;
}

ad::Var temporal_pool(const ad::Var& embeddings, const std::vector<Eigen::Index>& offsets) {
  if (offsets.empty() || offsets.back() != embeddings.rows()) {
    throw ArgumentError("frame offsets do not match the embedding rows");
  }
  const auto frames = static_cast<Eigen::Index>(offsets.size() - 1);
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index t = 0; t < frames; ++t) {
    const Eigen::Index begin = offsets[static_cast<std::size_t>(t)];
    const Eigen::Index end = offsets[static_cast<std::size_t>(t) + 1];
    for (Eigen::Index n = begin; n < end; ++n) {
      entries.emplace_back(t, n, 1.0 / static_cast<double>(end - begin));
    }
  }
  ad::SparseMatrix pool(frames, embeddings.rows());
  pool.setFromTriplets(entries.begin(), entries.end());
  if (embeddings.rows() == 0) {
    return ad::Var(ad::Matrix::Zero(frames, embeddings.cols()));
  }
  return ad::spmm(ad::SparseOperator(std::move(pool)), embeddings);
}

ad::Var fuse_and_score(const ad::Var& entity_features, const ad::Var& scene_features, const ScoreMlp& mlp) {
  if (entity_features.rows() != scene_features.rows()) {
    throw ArgumentError("F_o has " + std::to_string(entity_features.rows()) + " rows, F_s has " +
                        std::to_string(scene_features.rows()));
  }
  const ad::Var fused = ad::concat_cols(scene_features, entity_features);
  if (fused.cols() != mlp.hidden.weight.rows()) {
    throw ArgumentError("fused feature width " + std::to_string(fused.cols()) + " does not match the MLP input " +
                        std::to_string(mlp.hidden.weight.rows()));
  }
  return mlp(fused);
}

ad::Var difference_attention(const ad::Var& scene_features, const ScoreMlp& mlp) {
  using namespace ad;
  const Eigen::Index t = scene_features.rows();
  if (t < 1) throw ArgumentError("difference attention needs at least one frame");
  const Eigen::Index d = scene_features.cols();
  Var diffs(Matrix::Zero(1, d));
  if (t > 1) {
    const Var later = block(scene_features, 1, 0, t - 1, d);
    const Var earlier = block(scene_features, 0, 0, t - 1, d);
    diffs = embed(sub(later, earlier), 1, 0, t, d);
  }
  return mlp(diffs);
}

ScoreVars summarize_vars(const data::VideoRecord& record, const GraphInput& graph, const SummarizerConfig& config,
                         const SummarizerParams& params) {
  using namespace ad;
  const Eigen::Index t = record.n_downsampled();
  if (record.scene_features.cols() != config.d_scene) {
    throw ArgumentError("video '" + record.video_id + "' has scene width " +
                        std::to_string(record.scene_features.cols()) + ", model expects " +
                        std::to_string(config.d_scene));
  }
  if (static_cast<Eigen::Index>(graph.frame_offsets.size()) != t + 1) {
    throw ArgumentError("video '" + record.video_id + "': detections do not cover every frame");
  }
  const Var scene(record.scene_features);
  Var entity;
  if (config.use_stgcn) {
    entity = temporal_pool(gcn_forward(graph, params.gcn), graph.frame_offsets);
  } else {
    entity = Var(Matrix::Zero(t, config.gcn_hidden));
  }
  ScoreVars out;
  out.s_star = fuse_and_score(entity, scene, params.fusion);
  if (config.use_diff_attention) {
    out.s_diff = difference_attention(scene, params.difference);
    out.s_final = scale(add(out.s_star, out.s_diff), 0.5);
  } else {
    out.s_final = out.s_star;
  }
  return out;
}

FrameScores summarize(const data::VideoRecord& record, const data::FrameDetections& detections,
                      const SummarizerConfig& config, const SummarizerParams& params) {
  ad::NoGradGuard no_grad;
  const GraphInput graph = graph_for(detections, config);
  const ScoreVars vars = summarize_vars(record, graph, config, params);
  FrameScores out;
  out.s_star = column(vars.s_star);
  if (vars.s_diff.defined()) out.s_diff = column(vars.s_diff);
  out.s_final = column(vars.s_final);
  return out;
}

}  // namespace era::model
