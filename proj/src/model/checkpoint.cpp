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

#include "era/model/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "era/core/errors.hpp"

namespace era::model {
namespace {

constexpr char kMagic[] = "ERACKPT1";
constexpr std::size_t kMagicSize = 8;

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T le() {
    need(sizeof(T));
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return value;
  }

  std::string take(std::size_t n) {
    need(n);
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ParseError("checkpoint truncated at byte " + std::to_string(pos_));
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_checkpoint(const Checkpoint& c) {
  std::string out(kMagic, kMagicSize);
  put_le<std::uint64_t>(out, c.manifest.size());
  out += c.manifest;
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.tensors.size()));
  for (const auto& [name, m] : c.tensors) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
    out += name;
    put_le<std::uint32_t>(out, 2);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index col = 0; col < m.cols(); ++col) {
        put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(m(r, col))));
      }
    }
  }
  return out;
}

Checkpoint deserialize_checkpoint(const std::string& bytes) {
  Reader in(bytes);
  if (in.take(kMagicSize) != std::string(kMagic, kMagicSize)) throw ParseError("not a checkpoint archive");
  Checkpoint c;
  c.manifest = in.take(in.le<std::uint64_t>());
  const auto count = in.le<std::uint32_t>();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = in.take(in.le<std::uint32_t>());
    if (in.le<std::uint32_t>() != 2) throw ParseError("tensor '" + name + "' is not two-dimensional");
    const auto rows = static_cast<Eigen::Index>(in.le<std::uint64_t>());
    const auto cols = static_cast<Eigen::Index>(in.le<std::uint64_t>());
    ad::Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index col = 0; col < cols; ++col) {
        m(r, col) = static_cast<double>(std::bit_cast<float>(in.le<std::uint32_t>()));
      }
    }
    if (!c.tensors.emplace(std::move(name), std::move(m)).second) throw ParseError("duplicate tensor name");
  }
  if (!in.done()) throw ParseError("trailing bytes after checkpoint tensors");
  return c;
}

void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write checkpoint " + path.string());
  const std::string bytes = serialize_checkpoint(c);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read checkpoint " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize_checkpoint(buf.str());
}

}  // namespace era::model
