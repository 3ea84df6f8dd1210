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

#include "era/data/splits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "era/core/errors.hpp"
#include "era/core/rng.hpp"

namespace era::data {
namespace {

using nlohmann::json;

Fold make_fold(const std::vector<std::string>& ids, const std::vector<bool>& in_test) {
  Fold fold;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    (in_test[i] ? fold.test_ids : fold.train_ids).push_back(ids[i]);
  }
  return fold;
}

std::set<std::string> fold_union(const Fold& f) {
  std::set<std::string> all(f.train_ids.begin(), f.train_ids.end());
  all.insert(f.test_ids.begin(), f.test_ids.end());
  return all;
}

bool tests_partition(const SplitSet& s, const std::set<std::string>& all) {
  std::multiset<std::string> seen;
  for (const auto& f : s.folds) seen.insert(f.test_ids.begin(), f.test_ids.end());
  return seen.size() == all.size() && std::set<std::string>(seen.begin(), seen.end()) == all;
}

void check_fold(const Fold& f, std::size_t index) {
  std::set<std::string> train(f.train_ids.begin(), f.train_ids.end());
  if (train.size() != f.train_ids.size()) {
    throw ValidationError("fold " + std::to_string(index) + ": duplicate train id");
  }
  std::set<std::string> test(f.test_ids.begin(), f.test_ids.end());
  if (test.size() != f.test_ids.size()) {
    throw ValidationError("fold " + std::to_string(index) + ": duplicate test id");
  }
  for (const auto& id : f.test_ids) {
    if (train.count(id)) {
      throw ValidationError("fold " + std::to_string(index) + ": '" + id + "' is both train and test");
    }
  }
}

std::vector<std::string> string_array(const json& record, const char* key, std::size_t index) {
  if (!record.contains(key) || !record[key].is_array()) {
    throw ParseError("split record " + std::to_string(index) + " lacks array '" + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& v : record[key]) {
    if (!v.is_string()) throw ParseError("split record " + std::to_string(index) + ": non-string key");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string to_string(SplitMode mode) {
  return mode == SplitMode::kOverlapping ? "overlapping" : "non_overlapping";
}

SplitMode parse_split_mode(const std::string& text) {
  if (text == "overlapping") return SplitMode::kOverlapping;
  if (text == "non_overlapping" || text == "non-overlapping") return SplitMode::kNonOverlapping;
  throw ArgumentError("unknown split mode '" + text + "'");
}

SplitSet generate_splits(const std::vector<std::string>& ids, int n_folds, SplitMode mode, std::uint64_t seed) {
  if (n_folds < 2) throw ArgumentError("n_folds must be at least 2");
  if (ids.size() < static_cast<std::size_t>(n_folds)) {
    throw ArgumentError("need at least " + std::to_string(n_folds) + " videos, got " + std::to_string(ids.size()));
  }
  if (std::set<std::string>(ids.begin(), ids.end()).size() != ids.size()) {
    throw ArgumentError("video ids must be unique");
  }
  Rng rng = substream(seed, "splits");
  SplitSet out;
  out.mode = mode;
  out.seed = seed;
  const std::size_t n = ids.size();
  const auto folds = static_cast<std::size_t>(n_folds);
  if (mode == SplitMode::kNonOverlapping) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < folds; ++k) {
      std::vector<bool> in_test(n, false);
      // Contiguous chunks of the shuffled order; the first n % folds get one extra.
      const std::size_t begin = k * (n / folds) + std::min(k, n % folds);
      const std::size_t size = n / folds + (k < n % folds ? 1 : 0);
      for (std::size_t i = begin; i < begin + size; ++i) in_test[order[i]] = true;
      out.folds.push_back(make_fold(ids, in_test));
    }
  } else {
    const auto test_size = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(static_cast<double>(n) / static_cast<double>(folds))));
    for (std::size_t k = 0; k < folds; ++k) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<bool> in_test(n, false);
      for (std::size_t i = 0; i < test_size; ++i) in_test[order[i]] = true;
      out.folds.push_back(make_fold(ids, in_test));
    }
  }
  return out;
}

void validate_splits(const SplitSet& s, const std::vector<std::string>& ids) {
  const std::set<std::string> all(ids.begin(), ids.end());
  if (s.folds.empty()) throw ValidationError("split set has no folds");
  for (std::size_t k = 0; k < s.folds.size(); ++k) {
    check_fold(s.folds[k], k);
    for (const auto& id : fold_union(s.folds[k])) {
      if (!all.count(id)) throw ValidationError("fold " + std::to_string(k) + " references unknown video '" + id + "'");
    }
    if (fold_union(s.folds[k]).size() != all.size()) {
      throw ValidationError("fold " + std::to_string(k) + " does not cover every video");
    }
  }
  if (s.mode == SplitMode::kNonOverlapping && !tests_partition(s, all)) {
    throw ValidationError("non-overlapping split: test sets do not partition the videos");
  }
}

std::string dump_splits(const SplitSet& s) {
  json out = json::array();
  for (const auto& f : s.folds) {
    out.push_back({{"train_keys", f.train_ids},
                   {"test_keys", f.test_ids},
                   {"mode", to_string(s.mode)},
                   {"seed", s.seed}});
  }
  return out.dump(2);
}

SplitSet parse_splits(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("split file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw ParseError("split file must be a non-empty list of folds");
  SplitSet s;
  bool has_mode = false;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const json& record = doc[k];
    if (!record.is_object()) throw ParseError("split record " + std::to_string(k) + " is not an object");
    s.folds.push_back({string_array(record, "train_keys", k), string_array(record, "test_keys", k)});
    check_fold(s.folds.back(), k);
    if (record.contains("mode")) {
      s.mode = parse_split_mode(record["mode"].get<std::string>());
      has_mode = true;
    }
    if (record.contains("seed")) s.seed = record["seed"].get<std::uint64_t>();
  }
  const std::set<std::string> all = fold_union(s.folds.front());
  for (std::size_t k = 1; k < s.folds.size(); ++k) {
    if (fold_union(s.folds[k]) != all) {
      throw ValidationError("fold " + std::to_string(k) + " covers a different set of videos than fold 0");
    }
  }
  if (!has_mode) {
    s.mode = tests_partition(s, all) ? SplitMode::kNonOverlapping : SplitMode::kOverlapping;
  }
  return s;
}

void save_splits(const SplitSet& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write split file " + path.string());
  out << dump_splits(s) << "\n";
}

SplitSet load_splits(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read split file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_splits(buf.str());
}

}  // namespace era::data
