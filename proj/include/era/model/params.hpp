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

#include <map>
#include <string>
#include <vector>

#include "era/autodiff/var.hpp"
#include "era/core/rng.hpp"

namespace era::model {

// Named trainable tensors. Names are dotted paths ("vae.encoder.w_x");
// iteration is in name order, which fixes the checkpoint layout.
class ParamStore {
 public:
  ad::Var create(const std::string& name, ad::Matrix init);
  const ad::Var& get(const std::string& name) const;
  bool contains(const std::string& name) const { return params_.count(name) > 0; }

  // Parameters whose name starts with prefix, in name order.
  std::vector<ad::Var> with_prefix(const std::string& prefix) const;
  const std::map<std::string, ad::Var>& all() const { return params_; }
  std::size_t scalar_count() const;

  // Overwrite values by name; shapes and name sets must match exactly.
  void assign(const std::map<std::string, ad::Matrix>& values);
  std::map<std::string, ad::Matrix> snapshot() const;

 private:
  std::map<std::string, ad::Var> params_;
};

// Uniform in +-sqrt(6 / (fan_in + fan_out)).
ad::Matrix glorot_uniform(Eigen::Index fan_in, Eigen::Index fan_out, Rng& rng);

}  // namespace era::model
