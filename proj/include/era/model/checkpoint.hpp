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

#include <filesystem>
#include <map>
#include <string>

#include "era/autodiff/var.hpp"

namespace era::model {

// Named-tensor archive. Layout (all integers little-endian):
//   magic "ERACKPT1"
//   u64 manifest length, manifest bytes (JSON text: config, seed, ...)
//   u32 tensor count, then per tensor in name order:
//     u32 name length, name bytes, u32 rank (always 2), u64 rows, u64 cols,
//     rows * cols float32 values, row-major.
struct Checkpoint {
  std::string manifest;
  std::map<std::string, ad::Matrix> tensors;
};

std::string serialize_checkpoint(const Checkpoint& checkpoint);
Checkpoint deserialize_checkpoint(const std::string& bytes);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace era::model
