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

#include "era/data/types.hpp"

namespace era::data {

// Reads the per-video group layout of the community preprocessed benchmark
// files (features, n_frames, picks, change_points, user_summary, optional
// gtscore) plus the optional ragged entity arrays entity_boxes_<t> and
// entity_feats_<t>. Frames without entity arrays load as empty.
//
// Missing required arrays and invariant violations raise ValidationError;
// unreadable or wrongly shaped arrays raise ParseError. Both name the video.
Dataset load_dataset(const std::filesystem::path& path);

// Writes the same layout. Entity arrays are only written for frames with at
// least one entity. Object timestamps are disabled so identical datasets
// produce identical bytes.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace era::data
