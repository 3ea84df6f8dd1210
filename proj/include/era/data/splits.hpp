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
#include <filesystem>
#include <string>
#include <vector>

namespace era::data {

enum class SplitMode { kOverlapping, kNonOverlapping };

std::string to_string(SplitMode mode);
SplitMode parse_split_mode(const std::string& text);

struct Fold {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;

  bool operator==(const Fold&) const = default;
};

struct SplitSet {
  std::vector<Fold> folds;
  SplitMode mode = SplitMode::kNonOverlapping;
  std::uint64_t seed = 0;

  bool operator==(const SplitSet&) const = default;
};

// Non-overlapping: shuffled partition into near-equal test sets (sizes differ
// by at most one). Overlapping: each fold independently samples a test set of
// round(n / n_folds) ids, so a video may be tested several times or never.
SplitSet generate_splits(const std::vector<std::string>& video_ids, int n_folds, SplitMode mode,
                         std::uint64_t seed);

// Every fold partitions exactly the given ids; non-overlapping test sets
// partition them too. Throws ValidationError.
void validate_splits(const SplitSet& splits, const std::vector<std::string>& video_ids);

// JSON list of {train_keys, test_keys} records. mode and seed are written on
// every record and are optional on read: files without them infer the mode
// from whether the test sets partition the ids.
void save_splits(const SplitSet& splits, const std::filesystem::path& path);
SplitSet load_splits(const std::filesystem::path& path);
SplitSet parse_splits(const std::string& json_text);
std::string dump_splits(const SplitSet& splits);

}  // namespace era::data
