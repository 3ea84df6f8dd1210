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

// Independent reference implementations used to check the library. None of
// these call into the code under test.

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "era/autodiff/var.hpp"
#include "era/data/types.hpp"
#include "era/model/params.hpp"

namespace era::oracle {

// IoU of integer boxes by counting unit cells of the pixel grid.
double pixel_iou(int ax1, int ay1, int ax2, int ay2, int bx1, int by1, int bx2, int by2);

// Closed-form IoU written without shared helpers.
long double box_iou(const Eigen::RowVector4d& a, const Eigen::RowVector4d& b);

// Softmax in extended precision.
std::vector<long double> softmax(const std::vector<long double>& logits);

// Dense adjacency straight from the definitions: node pairs in one frame get
// softmax-normalized IoU (self included), node pairs in consecutive non-empty
// frames get softmax-normalized cosine similarity, all else 0.
Eigen::MatrixXd reference_adjacency(const data::FrameDetections& detections);

// Row sum the law predicts for every node: 2 when the next frame has nodes,
// else 1.
Eigen::VectorXd expected_row_sums(const data::FrameDetections& detections);

struct KnapsackAnswer {
  std::vector<bool> chosen;
  double value = 0.0;
};

// Exhaustive search over all subsets. Values within 1e-9 of the optimum
// count as ties, and the lexicographically smallest sorted index list wins.
KnapsackAnswer brute_force_knapsack(const std::vector<double>& values, const std::vector<std::int64_t>& lengths,
                                    std::int64_t capacity);

// Relative error ||a - b|| / sqrt(||a||^2 + ||b||^2) between the analytic
// gradient of f with respect to params and central differences at step h.
// f must rebuild its graph from the current parameter values on each call.
double gradient_relative_error(const std::function<ad::Var()>& f, const std::vector<ad::Var>& params,
                               double h = 1e-5);

// Overwrites every parameter, biases included, with N(0, 0.5^2) draws so
// gradient checks do not sit on ReLU kinks.
void randomize(const model::ParamStore& store, std::uint64_t seed);

// Random detections: frames, entities per frame and feature width.
data::FrameDetections random_detections(std::mt19937_64& rng, int frames, int max_entities, int feature_dim,
                                        bool allow_empty);

}  // namespace era::oracle
