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

#include "era/model/critic.hpp"

#include "era/core/errors.hpp"

namespace era::model {

std::string to_string(CriticLossMode mode) { return mode == CriticLossMode::kPaper ? "paper" : "standard"; }

CriticLossMode parse_critic_loss_mode(const std::string& text) {
  if (text == "paper") return CriticLossMode::kPaper;
  if (text == "standard") return CriticLossMode::kStandard;
  throw ArgumentError("unknown critic loss mode '" + text + "'");
}

void PatchConfig::validate() const {
  if (feature_size < 1) throw ArgumentError("patch feature size must be positive");
  if (blocks < 0) throw ArgumentError("patch block count must be non-negative");
  if (stride != 5 || kernel != 5) throw ArgumentError("patch blocks use kernel 5 and stride 5");
  if (!(lambda_gp > 0.0)) throw ArgumentError("lambda_gp must be positive");
  if (recurrent_hidden < 1) throw ArgumentError("recurrent_hidden must be positive");
}

CriticParams create_critic_params(const PatchConfig& c, ParamStore& store, Rng& rng) {
  c.validate();
  CriticParams p;
  const Eigen::Index k = c.feature_size;
  for (int m = 0; m < c.blocks; ++m) {
    const std::string name = "critic.block." + std::to_string(m);
    PatchBlock block;
    block.window = Linear::create(store, name + ".window", c.kernel * k, 2 * k, rng);
    block.pointwise = Linear::create(store, name + ".pointwise", 2 * k, k, rng);
    p.blocks.push_back(block);
  }
  p.head = Linear::create(store, "critic.head", k, 1, rng);
  p.recurrent = LstmCell::create(store, "critic.recurrent", k, c.recurrent_hidden, rng);
  p.recurrent_head = Linear::create(store, "critic.recurrent_head", c.recurrent_hidden, 1, rng);
  return p;
}

ad::Var patch_forward(const ad::Var& sequence, const std::vector<PatchBlock>& blocks) {
  using namespace ad;
  if (sequence.rows() < 1) throw ArgumentError("patch_forward needs at least one frame");
  constexpr Eigen::Index kStride = 5;
  Var h = sequence;
  for (const PatchBlock& b : blocks) {
    const Eigen::Index padded = (h.rows() + kStride - 1) / kStride * kStride;
    if (padded != h.rows()) h = embed(h, 0, 0, padded, h.cols());
    h = relu(b.window(group_rows(h, kStride)));
    h = relu(b.pointwise(h));
  }
  return h;
}

ad::Var critic_scores(const ad::Var& patches, const Linear& head) { return head(patches); }

ad::Var recurrent_scores(const ad::Var& sequence, const CriticParams& p) {
  return p.recurrent_head(p.recurrent.run(sequence).back());
}

CriticFn patch_critic(const CriticParams& p) {
  return [p](const ad::Var& x) { return critic_scores(patch_forward(x, p.blocks), p.head); };
}

CriticFn recurrent_critic(const CriticParams& p) {
  return [p](const ad::Var& x) { return recurrent_scores(x, p); };
}

ad::Var gradient_penalty(const CriticFn& critic, const ad::Matrix& x, const ad::Matrix& x_prime, double eps,
                         double lambda) {
  using namespace ad;
  if (x.rows() != x_prime.rows() || x.cols() != x_prime.cols()) {
    throw ArgumentError("gradient penalty needs equally shaped sequences");
  }
  const Var interp = Var::parameter(eps * x + (1.0 - eps) * x_prime);
  const Var out = mean(critic(interp));
  const Var g = grad(out, {interp}, /*create_graph=*/true).front();
  return scale(square(add_scalar(frobenius_norm(g), -1.0)), lambda);
}

ad::Var critic_loss(const CriticFn& critic, const ad::Matrix& x, const ad::Matrix& x_prime, CriticLossMode mode,
                    double eps, double lambda) {
  using namespace ad;
  const Var real = mean(critic(Var(x)));
  const Var fake = mean(critic(Var(x_prime)));
  const Var data_term = mode == CriticLossMode::kPaper ? abs(sub(real, fake)) : sub(fake, real);
  return add(data_term, gradient_penalty(critic, x, x_prime, eps, lambda));
}

ad::Var generator_adversarial_loss(const CriticFn& critic, const ad::Var& x_prime) {
  return ad::neg(ad::mean(critic(x_prime)));
}

ad::Var discriminator_bce_loss(const CriticFn& critic, const ad::Matrix& x, const ad::Matrix& x_prime) {
  using namespace ad;
  // -log sigmoid(c) = softplus(-c); -log(1 - sigmoid(c)) = softplus(c).
  const Var real = mean(softplus(neg(critic(Var(x)))));
  const Var fake = mean(softplus(critic(Var(x_prime))));
  return add(real, fake);
}

ad::Var generator_bce_loss(const CriticFn& critic, const ad::Var& x_prime) {
  return ad::mean(ad::softplus(ad::neg(critic(x_prime))));
}

}  // namespace era::model
