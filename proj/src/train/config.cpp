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

#include "era/train/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "era/core/digest.hpp"
#include "era/core/errors.hpp"

namespace era::train {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ArgumentError(key + ": expected a real number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ArgumentError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

int parse_small_int(const std::string& key, const std::string& v) {
  const long long out = parse_int(key, v);
  if (out < std::numeric_limits<int>::min() || out > std::numeric_limits<int>::max()) {
    throw ArgumentError(key + ": integer out of range");
  }
  return static_cast<int>(out);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ArgumentError(key + ": expected true/false, got '" + v + "'");
}

std::string fmt_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

struct Field {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename Member>
Field real_field(Member member) {
  return {[member](ExperimentConfig& c, const std::string& k, const std::string& v) { member(c) = parse_double(k, v); },
          [member](ExperimentConfig c) { return fmt_double(member(c)); }};
}

template <typename Member>
Field int_field(Member member) {
  return {[member](ExperimentConfig& c, const std::string& k, const std::string& v) {
            member(c) = parse_small_int(k, v);
          },
          [member](ExperimentConfig c) { return std::to_string(member(c)); }};
}

template <typename Member>
Field bool_field(Member member) {
  return {[member](ExperimentConfig& c, const std::string& k, const std::string& v) { member(c) = parse_bool(k, v); },
          [member](ExperimentConfig c) { return fmt_bool(member(c)); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> f;
    f["lr"] = real_field([](ExperimentConfig& c) -> double& { return c.train.lr; });
    f["lr_decay_factor"] = real_field([](ExperimentConfig& c) -> double& { return c.train.lr_decay_factor; });
    f["lr_decay_epoch"] = int_field([](ExperimentConfig& c) -> int& { return c.train.lr_decay_epoch; });
    f["epochs"] = int_field([](ExperimentConfig& c) -> int& { return c.train.epochs; });
    f["sigma"] = real_field([](ExperimentConfig& c) -> double& { return c.train.sigma; });
    f["n_critic"] = int_field([](ExperimentConfig& c) -> int& { return c.train.n_critic; });
    f["seed"] = {[](ExperimentConfig& c, const std::string& k, const std::string& v) {
                   const long long s = parse_int(k, v);
                   if (s < 0) throw ArgumentError(k + ": must be non-negative");
                   c.train.seed = static_cast<std::uint64_t>(s);
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.train.seed); }};
    f["weight.recon"] = real_field([](ExperimentConfig& c) -> double& { return c.train.weights.recon; });
    f["weight.prior"] = real_field([](ExperimentConfig& c) -> double& { return c.train.weights.prior; });
    f["weight.sparsity"] = real_field([](ExperimentConfig& c) -> double& { return c.train.weights.sparsity; });
    f["weight.score_sum"] = real_field([](ExperimentConfig& c) -> double& { return c.train.weights.score_sum; });
    f["weight.adversarial"] = real_field([](ExperimentConfig& c) -> double& { return c.train.weights.adversarial; });
    f["use_stgcn"] = bool_field([](ExperimentConfig& c) -> bool& { return c.train.toggles.use_stgcn; });
    f["use_diff_attention"] = bool_field([](ExperimentConfig& c) -> bool& { return c.train.toggles.use_diff_attention; });
    f["use_wgan"] = bool_field([](ExperimentConfig& c) -> bool& { return c.train.toggles.use_wgan; });
    f["use_patch"] = bool_field([](ExperimentConfig& c) -> bool& { return c.train.toggles.use_patch; });
    f["use_score_sum"] = bool_field([](ExperimentConfig& c) -> bool& { return c.train.toggles.use_score_sum; });
    f["d_entity"] = int_field([](ExperimentConfig& c) -> int& { return c.summarizer.d_entity; });
    f["d_scene"] = int_field([](ExperimentConfig& c) -> int& { return c.summarizer.d_scene; });
    f["gcn_hidden"] = int_field([](ExperimentConfig& c) -> int& { return c.summarizer.gcn_hidden; });
    f["gcn_layers"] = int_field([](ExperimentConfig& c) -> int& { return c.summarizer.gcn_layers; });
    f["mlp_hidden"] = int_field([](ExperimentConfig& c) -> int& { return c.summarizer.mlp_hidden; });
    f["vae_hidden"] = int_field([](ExperimentConfig& c) -> int& { return c.vae.d_hidden; });
    f["vae_latent"] = int_field([](ExperimentConfig& c) -> int& { return c.vae.d_latent; });
    f["patch_blocks"] = int_field([](ExperimentConfig& c) -> int& { return c.critic.blocks; });
    f["patch_kernel"] = int_field([](ExperimentConfig& c) -> int& { return c.critic.kernel; });
    f["patch_stride"] = int_field([](ExperimentConfig& c) -> int& { return c.critic.stride; });
    f["lambda_gp"] = real_field([](ExperimentConfig& c) -> double& { return c.critic.lambda_gp; });
    f["recurrent_hidden"] = int_field([](ExperimentConfig& c) -> int& { return c.critic.recurrent_hidden; });
    f["critic_loss_mode"] = {[](ExperimentConfig& c, const std::string&, const std::string& v) {
                               c.critic.loss_mode = model::parse_critic_loss_mode(v);
                             },
                             [](const ExperimentConfig& c) { return model::to_string(c.critic.loss_mode); }};
    return f;
  }();
  return table;
}

}  // namespace

double TrainConfig::lr_at_epoch(int epoch) const {
  return epoch > lr_decay_epoch ? lr * lr_decay_factor : lr;
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  c.summarizer.use_stgcn = train.toggles.use_stgcn;
  c.summarizer.use_diff_attention = train.toggles.use_diff_attention;
  c.summarizer.seed = train.seed;
  c.vae.seed = train.seed;
  c.vae.d_input = summarizer.d_scene;
  c.critic.feature_size = summarizer.d_scene;
  return c;
}

std::map<std::string, std::string> ExperimentConfig::to_key_values() const {
  std::map<std::string, std::string> out;
  for (const auto& [key, field] : fields()) out[key] = field.get(*this);
  return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  auto it = fields().find(key);
  if (it == fields().end()) throw ArgumentError("unknown config key '" + key + "'");
  it->second.set(*this, key, value);
}

void ExperimentConfig::apply(const std::map<std::string, std::string>& values) {
  std::vector<std::string> errors;
  for (const auto& [key, value] : values) {
    try {
      set(key, value);
    } catch (const std::exception& e) {
      errors.emplace_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
}

void ExperimentConfig::validate() const {
  std::vector<std::string> errors;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) errors.push_back(what);
  };
  const TrainConfig& t = train;
  check(t.lr > 0, "lr: must be positive");
  check(t.lr_decay_factor > 0, "lr_decay_factor: must be positive");
  check(t.lr_decay_epoch >= 0, "lr_decay_epoch: must be non-negative");
  check(t.epochs >= 1, "epochs: must be at least 1");
  check(t.sigma > 0 && t.sigma < 1, "sigma: must lie in (0, 1)");
  check(t.n_critic >= 1, "n_critic: must be at least 1");
  for (const auto& [key, w] : std::map<std::string, double>{{"weight.recon", t.weights.recon},
                                                             {"weight.prior", t.weights.prior},
                                                             {"weight.sparsity", t.weights.sparsity},
                                                             {"weight.score_sum", t.weights.score_sum},
                                                             {"weight.adversarial", t.weights.adversarial}}) {
    check(w >= 0, key + ": must be non-negative");
  }
  check(summarizer.d_entity >= 1, "d_entity: must be positive");
  check(summarizer.d_scene >= 1, "d_scene: must be positive");
  check(summarizer.gcn_hidden >= 1, "gcn_hidden: must be positive");
  check(summarizer.gcn_layers >= 1, "gcn_layers: must be at least 1");
  check(summarizer.mlp_hidden >= 1, "mlp_hidden: must be positive");
  check(vae.d_hidden >= 1, "vae_hidden: must be positive");
  check(vae.d_latent >= 1, "vae_latent: must be positive");
  check(critic.blocks >= 0, "patch_blocks: must be non-negative");
  check(critic.kernel == 5, "patch_kernel: must be 5");
  check(critic.stride == 5, "patch_stride: must be 5");
  check(critic.lambda_gp > 0, "lambda_gp: must be positive");
  check(critic.recurrent_hidden >= 1, "recurrent_hidden: must be positive");
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  for (const auto& [key, value] : to_key_values()) out += key + " = " + value + "\n";
  return out;
}

std::string ExperimentConfig::digest() const { return sha256_hex(to_text()); }

ExperimentConfig ExperimentConfig::compact(int feature_dim, int entity_dim) {
  ExperimentConfig c;
  c.summarizer.d_scene = feature_dim;
  c.summarizer.d_entity = entity_dim;
  c.summarizer.gcn_hidden = 16;
  c.summarizer.mlp_hidden = 32;
  c.vae.d_hidden = 32;
  c.vae.d_latent = 16;
  c.critic.recurrent_hidden = 16;
  return c;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c;
  c.apply(parse_key_values(buf.str()));
  return c;
}

}  // namespace era::train
