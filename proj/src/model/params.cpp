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

#include "era/model/params.hpp"

#include <cmath>
#include <random>

#include "era/core/errors.hpp"

namespace era::model {

ad::Var ParamStore::create(const std::string& name, ad::Matrix init) {
  if (params_.count(name)) throw ArgumentError("parameter '" + name + "' registered twice");
  ad::Var v = ad::Var::parameter(std::move(init));
  params_.emplace(name, v);
  return v;
}

const ad::Var& ParamStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ArgumentError("no parameter named '" + name + "'");
  return it->second;
}

std::vector<ad::Var> ParamStore::with_prefix(const std::string& prefix) const {
  std::vector<ad::Var> out;
  for (const auto& [name, var] : params_) {
    if (name.compare(0, prefix.size(), prefix) == 0) out.push_back(var);
  }
  return out;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& [name, var] : params_) n += static_cast<std::size_t>(var.value().size());
  return n;
}

void ParamStore::assign(const std::map<std::string, ad::Matrix>& values) {
  if (values.size() != params_.size()) {
    throw ValidationError("checkpoint holds " + std::to_string(values.size()) + " tensors, model expects " +
                          std::to_string(params_.size()));
  }
  for (const auto& [name, var] : params_) {
    auto it = values.find(name);
    if (it == values.end()) throw ValidationError("checkpoint lacks tensor '" + name + "'");
    if (it->second.rows() != var.rows() || it->second.cols() != var.cols()) {
      throw ValidationError("tensor '" + name + "' has shape " + std::to_string(it->second.rows()) + "x" +
                            std::to_string(it->second.cols()) + ", model expects " +
                            std::to_string(var.rows()) + "x" + std::to_string(var.cols()));
    }
  }
  for (const auto& [name, var] : params_) var.mutable_value() = values.at(name);
}

std::map<std::string, ad::Matrix> ParamStore::snapshot() const {
  std::map<std::string, ad::Matrix> out;
  for (const auto& [name, var] : params_) out.emplace(name, var.value());
  return out;
}

ad::Matrix glorot_uniform(Eigen::Index fan_in, Eigen::Index fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  ad::Matrix m(fan_in, fan_out);
  // Fill row by row so the draw order does not depend on storage order.
  for (Eigen::Index r = 0; r < fan_in; ++r) {
    for (Eigen::Index c = 0; c < fan_out; ++c) m(r, c) = dist(rng);
  }
  return m;
}

}  // namespace era::model
