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

#include "era/data/container.hpp"

#include <hdf5.h>

#include <cmath>

#include <string>
#include <utility>
#include <vector>

#include "era/core/errors.hpp"

namespace era::data {
namespace {

using CloseFn = herr_t (*)(hid_t);

class Handle {
 public:
  Handle(hid_t id, CloseFn close) : id_(id), close_(close) {}
  ~Handle() {
    if (id_ >= 0) close_(id_);
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : id_(std::exchange(other.id_, -1)), close_(other.close_) {}

  hid_t get() const { return id_; }
  bool ok() const { return id_ >= 0; }

 private:
  hid_t id_;
  CloseFn close_;
};

struct SilenceHdf5Errors {
  SilenceHdf5Errors() { H5Eset_auto2(H5E_DEFAULT, nullptr, nullptr); }
};

void silence() { static SilenceHdf5Errors once; }

struct RawArray {
  std::vector<hsize_t> dims;
  std::vector<double> values;  // row-major
};

bool has_link(hid_t group, const std::string& name) {
  return H5Lexists(group, name.c_str(), H5P_DEFAULT) > 0;
}

RawArray read_array(hid_t group, const std::string& video, const std::string& name) {
  Handle dset(H5Dopen2(group, name.c_str(), H5P_DEFAULT), H5Dclose);
  if (!dset.ok()) throw ParseError("video '" + video + "': cannot open array '" + name + "'");
  Handle space(H5Dget_space(dset.get()), H5Sclose);
  const int rank = H5Sget_simple_extent_ndims(space.get());
  if (rank < 0) throw ParseError("video '" + video + "': bad dataspace for '" + name + "'");
  RawArray out;
  out.dims.resize(static_cast<std::size_t>(rank));
  if (rank > 0) H5Sget_simple_extent_dims(space.get(), out.dims.data(), nullptr);
  hsize_t count = 1;
  for (hsize_t d : out.dims) count *= d;
  out.values.resize(count);
  if (count > 0 &&
      H5Dread(dset.get(), H5T_NATIVE_DOUBLE, H5S_ALL, H5S_ALL, H5P_DEFAULT, out.values.data()) < 0) {
    throw ParseError("video '" + video + "': cannot read array '" + name + "' as numbers");
  }
  return out;
}

[[noreturn]] void shape_error(const std::string& video, const std::string& name, const std::string& want) {
  throw ParseError("video '" + video + "': array '" + name + "' must be " + want);
}

Eigen::MatrixXd to_matrix(const RawArray& a, const std::string& video, const std::string& name) {
  if (a.dims.size() != 2) shape_error(video, name, "two-dimensional");
  const auto rows = static_cast<Eigen::Index>(a.dims[0]);
  const auto cols = static_cast<Eigen::Index>(a.dims[1]);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = a.values[static_cast<std::size_t>(r * cols + c)];
  }
  return m;
}

std::vector<std::int64_t> to_ints(const RawArray& a, const std::string& video, const std::string& name) {
  std::vector<std::int64_t> out;
  out.reserve(a.values.size());
  for (double v : a.values) {
    if (v != std::floor(v)) shape_error(video, name, "integer-valued");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

RawArray require(hid_t group, const std::string& video, const std::string& name) {
  if (!has_link(group, name)) {
    throw ValidationError("video '" + video + "': missing required array '" + name + "'");
  }
  return read_array(group, video, name);
}

Video read_video(hid_t file, const std::string& id) {
  Handle group(H5Gopen2(file, id.c_str(), H5P_DEFAULT), H5Gclose);
  if (!group.ok()) throw ParseError("video '" + id + "': not a group");
  Video video;
  VideoRecord& r = video.record;
  r.video_id = id;

  r.scene_features = to_matrix(require(group.get(), id, "features"), id, "features");

  const RawArray n_frames = require(group.get(), id, "n_frames");
  if (n_frames.values.size() != 1) shape_error(id, "n_frames", "a scalar");
  r.n_frames_original = to_ints(n_frames, id, "n_frames").front();

  const RawArray picks = require(group.get(), id, "picks");
  if (picks.dims.size() != 1) shape_error(id, "picks", "one-dimensional");
  r.picks = to_ints(picks, id, "picks");

  const RawArray cps = require(group.get(), id, "change_points");
  if (cps.dims.size() != 2 || cps.dims[1] != 2) shape_error(id, "change_points", "[n_shots x 2]");
  const auto bounds = to_ints(cps, id, "change_points");
  for (std::size_t i = 0; i + 1 < bounds.size(); i += 2) r.change_points.push_back({bounds[i], bounds[i + 1]});

  const RawArray users = require(group.get(), id, "user_summary");
  if (users.dims.size() != 2) shape_error(id, "user_summary", "[n_users x n_frames]");
  const auto n_users = users.dims[0];
  const auto n_cols = users.dims[1];
  for (hsize_t u = 0; u < n_users; ++u) {
    FrameMask mask(n_cols);
    for (hsize_t f = 0; f < n_cols; ++f) mask[f] = users.values[u * n_cols + f] > 0.5 ? 1 : 0;
    r.user_summaries.push_back(std::move(mask));
  }

  if (has_link(group.get(), "gtscore")) {
    const RawArray gt = read_array(group.get(), id, "gtscore");
    r.ground_truth_scores = Eigen::Map<const Eigen::VectorXd>(gt.values.data(),
                                                              static_cast<Eigen::Index>(gt.values.size()));
  }

  const auto n_down = static_cast<std::size_t>(r.scene_features.rows());
  FrameDetections& d = video.detections;
  d.boxes.assign(n_down, Eigen::MatrixXd(0, 4));
  d.features.assign(n_down, Eigen::MatrixXd(0, 0));
  Eigen::Index feat_dim = 0;
  for (std::size_t t = 0; t < n_down; ++t) {
    const std::string box_name = "entity_boxes_" + std::to_string(t);
    const std::string feat_name = "entity_feats_" + std::to_string(t);
    const bool has_boxes = has_link(group.get(), box_name);
    const bool has_feats = has_link(group.get(), feat_name);
    if (has_boxes != has_feats) {
      throw ParseError("video '" + id + "': frame " + std::to_string(t) +
                       " has only one of entity boxes/features");
    }
    if (!has_boxes) continue;
    d.boxes[t] = to_matrix(read_array(group.get(), id, box_name), id, box_name);
    d.features[t] = to_matrix(read_array(group.get(), id, feat_name), id, feat_name);
    if (d.features[t].rows() > 0) feat_dim = d.features[t].cols();
  }
  for (auto& f : d.features) {
    if (f.rows() == 0) f.resize(0, feat_dim);
  }
  validate(video);
  return video;
}

herr_t collect_name(hid_t, const char* name, const H5L_info_t*, void* out) {
  static_cast<std::vector<std::string>*>(out)->emplace_back(name);
  return 0;
}

Handle creation_props(hid_t cls) {
  Handle props(H5Pcreate(cls), H5Pclose);
  H5Pset_obj_track_times(props.get(), false);
  return props;
}

void write_array(hid_t group, const std::string& name, const std::vector<hsize_t>& dims,
                 hid_t file_type, hid_t mem_type, const void* data) {
  Handle space(dims.empty() ? H5Screate(H5S_SCALAR)
                            : H5Screate_simple(static_cast<int>(dims.size()), dims.data(), nullptr),
               H5Sclose);
  Handle dcpl = creation_props(H5P_DATASET_CREATE);
  Handle dset(H5Dcreate2(group, name.c_str(), file_type, space.get(), H5P_DEFAULT, dcpl.get(), H5P_DEFAULT),
              H5Dclose);
  if (!dset.ok() || H5Dwrite(dset.get(), mem_type, H5S_ALL, H5S_ALL, H5P_DEFAULT, data) < 0) {
    throw std::runtime_error("failed to write array '" + name + "'");
  }
}

void write_matrix_f32(hid_t group, const std::string& name, const Eigen::MatrixXd& m) {
  std::vector<float> buf;
  buf.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) buf.push_back(static_cast<float>(m(r, c)));
  }
  write_array(group, name, {static_cast<hsize_t>(m.rows()), static_cast<hsize_t>(m.cols())},
              H5T_IEEE_F32LE, H5T_NATIVE_FLOAT, buf.data());
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
  silence();
  if (!std::filesystem::exists(path)) throw ArgumentError("dataset file not found: " + path.string());
  Handle file(H5Fopen(path.c_str(), H5F_ACC_RDONLY, H5P_DEFAULT), H5Fclose);
  if (!file.ok()) throw ParseError("not a readable dataset container: " + path.string());
  // Files written here track creation order; community files list by name.
  H5_index_t index = H5_INDEX_NAME;
  {
    Handle root(H5Gopen2(file.get(), "/", H5P_DEFAULT), H5Gclose);
    Handle gcpl(H5Gget_create_plist(root.get()), H5Pclose);
    unsigned flags = 0;
    if (H5Pget_link_creation_order(gcpl.get(), &flags) >= 0 && (flags & H5P_CRT_ORDER_TRACKED)) {
      index = H5_INDEX_CRT_ORDER;
    }
  }
  std::vector<std::string> names;
  if (H5Literate(file.get(), index, H5_ITER_INC, nullptr, collect_name, &names) < 0) {
    throw ParseError("cannot list videos in " + path.string());
  }
  Dataset dataset;
  dataset.reserve(names.size());
  for (const auto& name : names) dataset.push_back(read_video(file.get(), name));
  return dataset;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  silence();
  Handle fcpl(H5Pcreate(H5P_FILE_CREATE), H5Pclose);
  H5Pset_link_creation_order(fcpl.get(), H5P_CRT_ORDER_TRACKED | H5P_CRT_ORDER_INDEXED);
  Handle file(H5Fcreate(path.c_str(), H5F_ACC_TRUNC, fcpl.get(), H5P_DEFAULT), H5Fclose);
  if (!file.ok()) throw ArgumentError("cannot create dataset file " + path.string());
  for (const Video& v : dataset) {
    const VideoRecord& r = v.record;
    Handle gcpl = creation_props(H5P_GROUP_CREATE);
    Handle group(H5Gcreate2(file.get(), r.video_id.c_str(), H5P_DEFAULT, gcpl.get(), H5P_DEFAULT), H5Gclose);
    if (!group.ok()) throw std::runtime_error("cannot create group for video '" + r.video_id + "'");
    write_matrix_f32(group.get(), "features", r.scene_features);
    const long long n_frames = r.n_frames_original;
    write_array(group.get(), "n_frames", {}, H5T_STD_I64LE, H5T_NATIVE_LLONG, &n_frames);
    std::vector<long long> picks(r.picks.begin(), r.picks.end());
    write_array(group.get(), "picks", {picks.size()}, H5T_STD_I64LE, H5T_NATIVE_LLONG, picks.data());
    std::vector<long long> cps;
    for (const Shot& s : r.change_points) {
      cps.push_back(s.first);
      cps.push_back(s.last);
    }
    write_array(group.get(), "change_points", {r.change_points.size(), 2}, H5T_STD_I64LE, H5T_NATIVE_LLONG,
                cps.data());
    std::vector<float> users;
    for (const auto& mask : r.user_summaries) {
      for (auto b : mask) users.push_back(b ? 1.0f : 0.0f);
    }
    write_array(group.get(), "user_summary",
                {r.user_summaries.size(), static_cast<hsize_t>(r.n_frames_original)}, H5T_IEEE_F32LE,
                H5T_NATIVE_FLOAT, users.data());
    if (r.ground_truth_scores) {
      std::vector<float> gt(r.ground_truth_scores->begin(), r.ground_truth_scores->end());
      write_array(group.get(), "gtscore", {gt.size()}, H5T_IEEE_F32LE, H5T_NATIVE_FLOAT, gt.data());
    }
    for (std::size_t t = 0; t < v.detections.n_frames(); ++t) {
      if (v.detections.count(t) == 0) continue;
      write_matrix_f32(group.get(), "entity_boxes_" + std::to_string(t), v.detections.boxes[t]);
      write_matrix_f32(group.get(), "entity_feats_" + std::to_string(t), v.detections.features[t]);
    }
  }
}

}  // namespace era::data
