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

#include "era/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>

#include "era/core/errors.hpp"
#include "era/train/losses.hpp"

namespace era::train {
namespace {

using nlohmann::json;

// Stops gradient recording into a set of parameters for its lifetime.
class FreezeGuard {
 public:
  explicit FreezeGuard(std::vector<ad::Var> params) : params_(std::move(params)) {
    for (auto& p : params_) p.node()->requires_grad = false;
  }
  ~FreezeGuard() {
    for (auto& p : params_) p.node()->requires_grad = true;
  }
  FreezeGuard(const FreezeGuard&) = delete;
  FreezeGuard& operator=(const FreezeGuard&) = delete;

 private:
  std::vector<ad::Var> params_;
};

ad::Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ad::Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal(rng);
  }
  return m;
}

void require_finite(double value, const std::string& term, const std::string& video_id) {
  if (!std::isfinite(value)) {
    throw NumericError("loss term '" + term + "' is not finite (" + std::to_string(value) + ") on video '" +
                       video_id + "'");
  }
}

}  // namespace

std::string to_log_line(const StepRecord& r) {
  json j;
  j["epoch"] = r.epoch;
  j["step"] = r.step;
  j["video_id"] = r.video_id;
  j["terms"] = r.terms;
  j["lr"] = r.lr;
  return j.dump();
}

StepRecord parse_log_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    StepRecord r;
    r.epoch = j.at("epoch").get<int>();
    r.step = j.at("step").get<long long>();
    r.video_id = j.at("video_id").get<std::string>();
    r.terms = j.at("terms").get<std::map<std::string, double>>();
    r.lr = j.at("lr").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad training log line: ") + e.what());
  }
}

Trainer::Trainer(EraModel& model)
    : model_(model),
      generator_opt_(model.generator_params(), model.config().train.lr),
      critic_opt_(model.critic_params(), model.config().train.lr) {}

void Trainer::set_lr(double lr) {
  generator_opt_.set_lr(lr);
  critic_opt_.set_lr(lr);
}

const model::GraphInput& Trainer::graph(const data::Video& video) {
  auto it = graphs_.find(video.record.video_id);
  if (it == graphs_.end()) {
    it = graphs_.emplace(video.record.video_id, model::graph_for(video.detections, model_.config().summarizer)).first;
  }
  return it->second;
}

ad::Matrix Trainer::reconstruct(const data::Video& video, Rng& rng) {
  ad::NoGradGuard no_grad;
  const auto& c = model_.config();
  const ad::Var x(video.record.scene_features);
  const model::ScoreVars scores = model::summarize_vars(video.record, graph(video), c.summarizer, model_.summarizer());
  const model::Posterior post = model::encode(ad::mul_rows(x, scores.s_final), model_.vae());
  const ad::Var noise(standard_normal(1, c.vae.d_latent, rng));
  const ad::Var z = model::reparameterize(post.mu, post.logvar, noise);
  return model::decode(z, x.rows(), model_.vae()).value();
}

std::map<std::string, double> Trainer::generator_step(const data::Video& video, Rng& rng) {
  using namespace ad;
  const auto& c = model_.config();
  const TrainConfig& t = c.train;
  const std::string& id = video.record.video_id;
  FreezeGuard frozen(model_.params().with_prefix("critic."));

  const Var x(video.record.scene_features);
  const model::ScoreVars scores = model::summarize_vars(video.record, graph(video), c.summarizer, model_.summarizer());
  const Var& s = scores.s_final;
  const model::Posterior post = model::encode(mul_rows(x, s), model_.vae());
  const Var noise(standard_normal(1, c.vae.d_latent, rng));
  const Var x_hat = model::decode(model::reparameterize(post.mu, post.logvar, noise), x.rows(), model_.vae());

  std::map<std::string, double> terms;
  Var total = Var::scalar(0.0);
  auto add_term = [&](const std::string& name, double weight, bool enabled, auto build) {
    if (!enabled || weight == 0.0) {
      terms[name] = 0.0;
      return;
    }
    const Var value = build();
    terms[name] = value.item();
    require_finite(terms[name], name, id);
    total = add(total, scale(value, weight));
  };
  add_term("recon", t.weights.recon, true, [&] { return model::reconstruction_loss(x, x_hat); });
  add_term("prior", t.weights.prior, true, [&] { return model::prior_loss(post.mu, post.logvar); });
  add_term("sparsity", t.weights.sparsity, true, [&] { return sparsity_loss(s, t.sigma); });
  add_term("score_sum", t.weights.score_sum, t.toggles.use_score_sum, [&] { return score_sum_loss(s); });
  add_term("adversarial", t.weights.adversarial, true, [&] {
    const model::CriticFn critic = model_.critic_fn();
    return t.toggles.use_wgan ? model::generator_adversarial_loss(critic, x_hat)
                              : model::generator_bce_loss(critic, x_hat);
  });
  terms["total"] = total.item();
  require_finite(terms["total"], "total", id);

  const std::vector<Var> params = model_.generator_params();
  generator_opt_.step(grad(total, params));
  return terms;
}

double Trainer::critic_step(const data::Video& video, const ad::Matrix& reconstruction, Rng& rng) {
  const auto& c = model_.config();
  const ad::Matrix& x = video.record.scene_features;
  const model::CriticFn critic = model_.critic_fn();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ad::Var loss;
  if (c.train.toggles.use_wgan) {
    const double eps = unit(rng);
    loss = model::critic_loss(critic, x, reconstruction, c.critic.loss_mode, eps, c.critic.lambda_gp);
  } else {
    loss = model::discriminator_bce_loss(critic, x, reconstruction);
  }
  const double value = loss.item();
  require_finite(value, "critic", video.record.video_id);
  critic_opt_.step(ad::grad(loss, model_.critic_params()));
  return value;
}

StepRecord Trainer::train_on(const data::Video& video, int epoch, Rng& rng) {
  const ad::Matrix reconstruction = reconstruct(video, rng);
  double critic_total = 0.0;
  const int n_critic = model_.config().train.n_critic;
  for (int k = 0; k < n_critic; ++k) critic_total += critic_step(video, reconstruction, rng);
  StepRecord record;
  record.epoch = epoch;
  record.step = ++step_;
  record.video_id = video.record.video_id;
  record.lr = lr();
  record.terms = generator_step(video, rng);
  record.terms["critic"] = critic_total / n_critic;
  return record;
}

model::Checkpoint Trainer::optimizer_state() const {
  std::map<std::string, ad::Matrix> tensors = generator_opt_.export_moments("generator");
  tensors.merge(critic_opt_.export_moments("critic"));
  json manifest;
  manifest["generator_steps"] = generator_opt_.steps();
  manifest["critic_steps"] = critic_opt_.steps();
  manifest["log_steps"] = step_;
  return {manifest.dump(), std::move(tensors)};
}

void Trainer::restore_optimizer_state(const model::Checkpoint& state) {
  json manifest;
  try {
    manifest = json::parse(state.manifest);
    generator_opt_.import_moments(state.tensors, "generator", manifest.at("generator_steps").get<long long>());
    critic_opt_.import_moments(state.tensors, "critic", manifest.at("critic_steps").get<long long>());
    step_ = manifest.at("log_steps").get<long long>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad optimizer state: ") + e.what());
  }
}

FitResult fit_model(EraModel& model, const data::Dataset& dataset, const std::vector<std::string>& train_ids,
                    const FitOptions& options, const ResumePoint* resume) {
  if (train_ids.empty()) throw ArgumentError("training split is empty");
  std::vector<const data::Video*> videos;
  for (const auto& id : train_ids) videos.push_back(&data::find_video(dataset, id));

  const TrainConfig& t = model.config().train;
  Trainer trainer(model);
  FitResult result;
  int first_epoch = 1;
  if (resume) {
    trainer.restore_optimizer_state(resume->optimizer);
    result.best = resume->best;
    result.best_epoch = resume->best_epoch;
    result.best_total = resume->best_total;
    first_epoch = resume->completed_epochs + 1;
  }
  for (int epoch = first_epoch; epoch <= t.epochs; ++epoch) {
    trainer.set_lr(t.lr_at_epoch(epoch));
    // Per-epoch stream: a resumed run draws the same numbers.
    Rng rng = substream(t.seed, "train.epoch", static_cast<std::uint64_t>(epoch));
    std::vector<const data::Video*> order = videos;
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_total = 0.0;
    for (const data::Video* video : order) {
      StepRecord record = trainer.train_on(*video, epoch, rng);
      epoch_total += record.terms.at("total");
      if (options.on_step) options.on_step(record);
      result.log.push_back(std::move(record));
    }
    epoch_total /= static_cast<double>(order.size());
    if (epoch_total < result.best_total) {
      result.best_total = epoch_total;
      result.best_epoch = epoch;
      result.best = model.to_checkpoint();
    }
    result.last = model.to_checkpoint();
    if (options.on_epoch_end) options.on_epoch_end(epoch, trainer, result);
  }
  if (result.last.tensors.empty()) result.last = model.to_checkpoint();
  if (result.best.tensors.empty()) result.best = result.last;
  return result;
}

FitResult fit(const data::Dataset& dataset, const data::Fold& fold, const ExperimentConfig& config,
              const FitOptions& options) {
  EraModel model(config);
  return fit_model(model, dataset, fold.train_ids, options);
}

}  // namespace era::train
