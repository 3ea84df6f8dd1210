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
#include <random>
#include <string_view>

namespace era {

using Rng = std::mt19937_64;

// Independent generator derived from a root seed and a stream name, so that
// modules drawing random numbers never perturb each other's sequences.
Rng substream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace era
