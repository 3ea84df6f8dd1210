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

#include "era/model/layers.hpp"

namespace era::model {

Linear Linear::create(ParamStore& store, const std::string& name, Eigen::Index in, Eigen::Index out, Rng& rng) {
  return {store.create(name + ".weight", glorot_uniform(in, out, rng)),
          store.create(name + ".bias", ad::Matrix::Zero(1, out))};
}

ad::Var Linear::operator()(const ad::Var& x) const { return ad::add_row(ad::matmul(x, weight), bias); }

LstmCell LstmCell::create(ParamStore& store, const std::string& name, Eigen::Index in, Eigen::Index hidden,
                          Rng& rng) {
  return {store.create(name + ".w_input", glorot_uniform(in, 4 * hidden, rng)),
          store.create(name + ".w_hidden", glorot_uniform(hidden, 4 * hidden, rng)),
          store.create(name + ".bias", ad::Matrix::Zero(1, 4 * hidden))};
}

LstmCell::State LstmCell::zero_state() const {
  const Eigen::Index h = hidden_size();
  return {ad::Var(ad::Matrix::Zero(1, h)), ad::Var(ad::Matrix::Zero(1, h))};
}

LstmCell::State LstmCell::step(const ad::Var& gates_input, const State& state) const {
  using namespace ad;
  const Eigen::Index h = hidden_size();
  const Var gates = add(add(gates_input, matmul(state.h, w_hidden)), bias);
  const Var in_gate = sigmoid(block(gates, 0, 0, 1, h));
  const Var forget_gate = sigmoid(block(gates, 0, h, 1, h));
  const Var candidate = tanh(block(gates, 0, 2 * h, 1, h));
  const Var out_gate = sigmoid(block(gates, 0, 3 * h, 1, h));
  const Var c = add(mul(forget_gate, state.c), mul(in_gate, candidate));
  return {mul(out_gate, tanh(c)), c};
}

std::vector<ad::Var> LstmCell::run(const ad::Var& sequence) const {
  const ad::Var projected = ad::matmul(sequence, w_input);
  State state = zero_state();
  std::vector<ad::Var> hidden;
  hidden.reserve(static_cast<std::size_t>(sequence.rows()));
  for (Eigen::Index t = 0; t < sequence.rows(); ++t) {
    state = step(ad::block(projected, t, 0, 1, projected.cols()), state);
    hidden.push_back(state.h);
  }
  return hidden;
}

ScoreMlp ScoreMlp::create(ParamStore& store, const std::string& name, Eigen::Index in, Eigen::Index width,
                          Rng& rng) {
  Linear first = Linear::create(store, name + ".hidden", in, width, rng);
  Linear second = Linear::create(store, name + ".output", width, 1, rng);
  return {first, second};
}

ad::Var ScoreMlp::operator()(const ad::Var& x) const { return ad::sigmoid(output(ad::relu(hidden(x)))); }

}  // namespace era::model
