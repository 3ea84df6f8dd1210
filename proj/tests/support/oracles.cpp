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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace era::oracle {

double pixel_iou(int ax1, int ay1, int ax2, int ay2, int bx1, int by1, int bx2, int by2) {
  const int x0 = std::min(ax1, bx1), x1 = std::max(ax2, bx2);
  const int y0 = std::min(ay1, by1), y1 = std::max(ay2, by2);
  long inter = 0, uni = 0;
  for (int x = x0; x < x1; ++x) {
    for (int y = y0; y < y1; ++y) {
      const bool in_a = x >= ax1 && x < ax2 && y >= ay1 && y < ay2;
      const bool in_b = x >= bx1 && x < bx2 && y >= by1 && y < by2;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

long double box_iou(const Eigen::RowVector4d& a, const Eigen::RowVector4d& b) {
  const long double w = std::max<long double>(0.0L, std::min<long double>(a(2), b(2)) - std::max<long double>(a(0), b(0)));
  const long double h = std::max<long double>(0.0L, std::min<long double>(a(3), b(3)) - std::max<long double>(a(1), b(1)));
  const long double inter = w * h;
  const long double area_a = (static_cast<long double>(a(2)) - a(0)) * (static_cast<long double>(a(3)) - a(1));
  const long double area_b = (static_cast<long double>(b(2)) - b(0)) * (static_cast<long double>(b(3)) - b(1));
  return inter / (area_a + area_b - inter);
}

std::vector<long double> softmax(const std::vector<long double>& logits) {
  std::vector<long double> out(logits.size());
  long double total = 0.0L;
  for (std::size_t i = 0; i < logits.size(); ++i) total += out[i] = std::exp(logits[i]);
  for (auto& v : out) v /= total;
  return out;
}

namespace {

long double cosine(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
  long double dot = 0.0L, na = 0.0L, nb = 0.0L;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    dot += static_cast<long double>(a(k)) * b(k);
    na += static_cast<long double>(a(k)) * a(k);
    nb += static_cast<long double>(b(k)) * b(k);
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

Eigen::MatrixXd reference_adjacency(const data::FrameDetections& d) {
  std::vector<Eigen::Index> offset{0};
  for (std::size_t t = 0; t < d.n_frames(); ++t) offset.push_back(offset.back() + d.boxes[t].rows());
  const Eigen::Index n = offset.back();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = 0; t < d.n_frames(); ++t) {
    const Eigen::Index nt = d.boxes[t].rows();
    for (Eigen::Index i = 0; i < nt; ++i) {
      std::vector<long double> s;
      for (Eigen::Index j = 0; j < nt; ++j) s.push_back(box_iou(d.boxes[t].row(i), d.boxes[t].row(j)));
      const auto p = softmax(s);
      for (Eigen::Index j = 0; j < nt; ++j) e(offset[t] + i, offset[t] + j) = static_cast<double>(p[j]);
      if (t + 1 >= d.n_frames()) continue;
      const Eigen::Index nn = d.boxes[t + 1].rows();
      if (nn == 0) continue;
      std::vector<long double> c;
      for (Eigen::Index j = 0; j < nn; ++j) c.push_back(cosine(d.features[t].row(i), d.features[t + 1].row(j)));
      const auto q = softmax(c);
      for (Eigen::Index j = 0; j < nn; ++j) e(offset[t] + i, offset[t + 1] + j) = static_cast<double>(q[j]);
    }
  }
  return e;
}

Eigen::VectorXd expected_row_sums(const data::FrameDetections& d) {
  std::vector<double> sums;
  for (std::size_t t = 0; t < d.n_frames(); ++t) {
    const bool next = t + 1 < d.n_frames() && d.boxes[t + 1].rows() > 0;
    for (Eigen::Index i = 0; i < d.boxes[t].rows(); ++i) sums.push_back(next ? 2.0 : 1.0);
  }
  return Eigen::Map<Eigen::VectorXd>(sums.data(), static_cast<Eigen::Index>(sums.size()));
}

KnapsackAnswer brute_force_knapsack(const std::vector<double>& values, const std::vector<std::int64_t>& lengths,
                                    std::int64_t capacity) {
  const std::size_t n = values.size();
  KnapsackAnswer best{std::vector<bool>(n, false), 0.0};
  std::vector<std::size_t> best_list;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double v = 0.0;
    std::int64_t w = 0;
    std::vector<std::size_t> list;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        v += values[i];
        w += lengths[i];
        list.push_back(i);
      }
    }
    if (w > capacity) continue;
    const bool better = v > best.value + 1e-9;
    const bool tie = std::abs(v - best.value) <= 1e-9;
    if (better || (tie && list < best_list)) {
      best.value = v;
      best_list = list;
    }
  }
  for (auto i : best_list) best.chosen[i] = true;
  return best;
}

double gradient_relative_error(const std::function<ad::Var()>& f, const std::vector<ad::Var>& params, double h) {
  const std::vector<ad::Var> analytic = ad::grad(f(), params);
  double diff = 0.0, scale = 0.0;
  for (std::size_t p = 0; p < params.size(); ++p) {
    ad::Matrix& value = params[p].mutable_value();
    for (Eigen::Index i = 0; i < value.size(); ++i) {
      const double saved = value.data()[i];
      value.data()[i] = saved + h;
      const double up = f().item();
      value.data()[i] = saved - h;
      const double down = f().item();
      value.data()[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[p].value().data()[i];
      diff += (a - numeric) * (a - numeric);
      scale += a * a + numeric * numeric;
    }
  }
  return std::sqrt(diff) / std::max(std::sqrt(scale), 1e-12);
}

void randomize(const model::ParamStore& store, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 0.5);
  for (const auto& [name, v] : store.all()) {
    for (Eigen::Index i = 0; i < v.value().size(); ++i) v.mutable_value().data()[i] = n(rng);
  }
}

data::FrameDetections random_detections(std::mt19937_64& rng, int frames, int max_entities, int feature_dim,
                                        bool allow_empty) {
  std::uniform_int_distribution<int> count(allow_empty ? 0 : 1, max_entities);
  std::uniform_real_distribution<double> coord(0.0, 100.0), size(5.0, 60.0), feat(-1.0, 1.0);
  data::FrameDetections d;
  for (int t = 0; t < frames; ++t) {
    const int n = count(rng);
    Eigen::MatrixXd boxes(n, 4), features(n, feature_dim);
    for (int i = 0; i < n; ++i) {
      const double x = coord(rng), y = coord(rng);
      boxes.row(i) << x, y, x + size(rng), y + size(rng);
      for (int k = 0; k < feature_dim; ++k) features(i, k) = feat(rng);
    }
    d.boxes.push_back(boxes);
    d.features.push_back(features);
  }
  return d;
}

}  // namespace era::oracle
