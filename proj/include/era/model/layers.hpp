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

#include <string>
#include <vector>

#include "era/autodiff/ops.hpp"
#include "era/model/params.hpp"

namespace era::model {

// y = x W + b, one row per sample.
struct Linear {
  ad::Var weight;  // [in x out]
  ad::Var bias;    // [1 x out]

  static Linear create(ParamStore& store, const std::string& name, Eigen::Index in, Eigen::Index out, Rng& rng);
  ad::Var operator()(const ad::Var& x) const;
};

// Single-layer gated recurrent cell (input, forget, cell, output gates).
struct LstmCell {
  ad::Var w_input;   // [in x 4H]
  ad::Var w_hidden;  // [H x 4H]
  ad::Var bias;      // [1 x 4H]

  struct State {
    ad::Var h;
    ad::Var c;
  };

  static LstmCell create(ParamStore& store, const std::string& name, Eigen::Index in, Eigen::Index hidden, Rng& rng);
  Eigen::Index hidden_size() const { return w_hidden.rows(); }
  State zero_state() const;
  // gates_input is the [1 x 4H] input contribution x W_input for this step.
  State step(const ad::Var& gates_input, const State& state) const;
  // Hidden states for every row of the sequence, starting from zero state.
  std::vector<ad::Var> run(const ad::Var& sequence) const;
};

// Per-row two-layer scoring head: sigmoid(W2 relu(W1 x + b1) + b2).
struct ScoreMlp {
  Linear hidden;
  Linear output;

  static ScoreMlp create(ParamStore& store, const std::string& name, Eigen::Index in, Eigen::Index width, Rng& rng);
  ad::Var operator()(const ad::Var& x) const;
};

}  // namespace era::model
