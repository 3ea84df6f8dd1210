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

#include "era/model/vae.hpp"

#include <string>

#include "era/core/errors.hpp"

namespace era::model {

void VaeConfig::validate() const {
  if (d_input < 1 || d_hidden < 1 || d_latent < 1) throw ArgumentError("VAE dimensions must be positive");
}

VaeParams create_vae_params(const VaeConfig& c, ParamStore& store, Rng& rng) {
  c.validate();
  VaeParams p;
  p.encoder = LstmCell::create(store, "vae.encoder", c.d_input, c.d_hidden, rng);
  p.to_mu = Linear::create(store, "vae.mu", c.d_hidden, c.d_latent, rng);
  p.to_logvar = Linear::create(store, "vae.logvar", c.d_hidden, c.d_latent, rng);
  p.decoder = LstmCell::create(store, "vae.decoder", c.d_latent, c.d_hidden, rng);
  p.to_output = Linear::create(store, "vae.output", c.d_hidden, c.d_input, rng);
  return p;
}

Posterior encode(const ad::Var& weighted, const VaeParams& p) {
  if (weighted.rows() < 1) throw ArgumentError("encode needs at least one frame");
  if (weighted.cols() != p.encoder.w_input.rows()) {
    throw ArgumentError("encoder expects width " + std::to_string(p.encoder.w_input.rows()) + ", got " +
                        std::to_string(weighted.cols()));
  }
  const ad::Var last = p.encoder.run(weighted).back();
  return {p.to_mu(last), p.to_logvar(last)};
}

ad::Var reparameterize(const ad::Var& mu, const ad::Var& logvar, const ad::Var& noise) {
  return ad::add(mu, ad::mul(ad::exp(ad::scale(logvar, 0.5)), noise));
}

ad::Var decode(const ad::Var& z, Eigen::Index frames, const VaeParams& p) {
  if (frames < 1) throw ArgumentError("decode needs at least one frame");
  if (z.rows() != 1 || z.cols() != p.decoder.w_input.rows()) throw ArgumentError("latent code has the wrong shape");
  const ad::Var projected = ad::matmul(z, p.decoder.w_input);
  LstmCell::State state = p.decoder.zero_state();
  std::vector<ad::Var> hidden;
  hidden.reserve(static_cast<std::size_t>(frames));
  for (Eigen::Index t = 0; t < frames; ++t) {
    state = p.decoder.step(projected, state);
    hidden.push_back(state.h);
  }
  return p.to_output(ad::vstack(hidden));
}

ad::Var prior_loss(const ad::Var& mu, const ad::Var& logvar) {
  using namespace ad;
  const Var terms = sub(add_scalar(add(square(mu), exp(logvar)), -1.0), logvar);
  return scale(sum(terms), 0.5);
}

ad::Var reconstruction_loss(const ad::Var& x, const ad::Var& x_hat) {
  if (x.rows() != x_hat.rows() || x.cols() != x_hat.cols()) {
    throw ArgumentError("reconstruction shapes differ");
  }
  return ad::mean(ad::square(ad::sub(x, x_hat)));
}

}  // namespace era::model
