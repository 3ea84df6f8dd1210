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

#include "era/data/types.hpp"

namespace era::data {

struct SyntheticOptions {
  int n_videos = 3;
  // Inclusive range of downsampled frame counts.
  int t_min = 40;
  int t_max = 60;
  int n_users = 2;
  // Fraction of downsampled frames carrying at least one entity.
  double entity_rate = 0.8;
  std::uint64_t seed = 7;
  int feature_dim = 1024;
  int entity_dim = 256;
  // Original frames per downsampled frame (30 fps source at 2 fps).
  int subsample = 15;
};

// Videos with planted key shots. Key shots carry distinctive, stronger scene
// features and interacting entities; users select whole shots, mostly the
// planted ones, within 15% of the original frames. Pure function of options.
// All real values are exactly representable as float32 so datasets survive a
// container round trip unchanged.
Dataset generate_synthetic(const SyntheticOptions& options);

}  // namespace era::data
