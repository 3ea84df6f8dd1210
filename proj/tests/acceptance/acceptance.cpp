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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "era/cli/commands.hpp"
#include "era/core/digest.hpp"
#include "era/data/synthetic.hpp"
#include "era/eval/protocol.hpp"
#include "era/graph/stgraph.hpp"
#include "era/model/checkpoint.hpp"
#include "era/train/losses.hpp"
#include "era/train/trainer.hpp"
#include "oracles.hpp"

using namespace era;

namespace {

// Tolerances and budgets.
constexpr double kGraphTolerance = 1e-12;
constexpr double kRowSumTolerance = 1e-12;
constexpr double kFTolerance = 1e-12;
constexpr double kLossTolerance = 1e-9;
constexpr double kGradientTolerance = 1e-4;
constexpr double kReconRatio = 0.5;
constexpr double kLrTolerance = 1e-15;
constexpr double kBudgetGraph = 5.0;
constexpr double kBudgetKnapsack = 10.0;
constexpr double kBudgetPatch = 30.0;
constexpr double kBudgetSmoke = 300.0;
constexpr double kBudgetProtocol = 900.0;

// Scene and entity widths for the training criteria. The default widths give
// a 25M-parameter critic that does not fit the time budgets on one core.
constexpr int kSceneDim = 64;
constexpr int kEntityDim = 32;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

data::SyntheticOptions synthetic(int n_videos, std::uint64_t seed = 7) {
  data::SyntheticOptions o;
  o.n_videos = n_videos;
  o.feature_dim = kSceneDim;
  o.entity_dim = kEntityDim;
  o.seed = seed;
  return o;
}

train::ExperimentConfig config(std::uint64_t seed, int epochs) {
  train::ExperimentConfig c = train::ExperimentConfig::compact(kSceneDim, kEntityDim);
  c.train.seed = seed;
  c.train.epochs = epochs;
  return c;
}

bool all_finite(const train::StepRecord& r) {
  for (const auto& [k, v] : r.terms) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string log_text(const std::vector<train::StepRecord>& log) {
  std::string out;
  for (const auto& r : log) out += train::to_log_line(r) + "\n";
  return out;
}

// 1
void graph_oracle(Outcome& o) {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> frames(1, 3);
  double worst = 0.0, worst_row = 0.0;
  int nodes = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_detections(rng, frames(rng), 3, 8, true);
    const Eigen::MatrixXd got = graph::assemble_adjacency(d).to_dense();
    const Eigen::MatrixXd want = oracle::reference_adjacency(d);
    if (got.rows() != want.rows() || got.cols() != want.cols()) {
      o.require(false, "shape mismatch in trial " + std::to_string(trial));
      continue;
    }
    if (got.size() == 0) continue;
    nodes += static_cast<int>(got.rows());
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
    worst_row = std::max(worst_row, (got.rowwise().sum() - oracle::expected_row_sums(d)).cwiseAbs().maxCoeff());
  }
  o.detail << "200 configs, " << nodes << " nodes, max |E-ref| " << worst << ", max row-sum deviation " << worst_row;
  o.require(worst <= kGraphTolerance, "reference mismatch");
  o.require(worst_row <= kRowSumTolerance, "row-sum law");
}

// 2
void knapsack_and_f(Outcome& o) {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> count(1, 15), len(1, 20), coarse(0, 3);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = count(rng);
    std::vector<double> values(n);
    std::vector<std::int64_t> lengths(n);
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      values[i] = trial % 2 ? val(rng) : coarse(rng) / 3.0;
      total += lengths[i] = len(rng);
    }
    const std::int64_t cap = std::uniform_int_distribution<std::int64_t>(0, total)(rng);
    const auto want = oracle::brute_force_knapsack(values, lengths, cap);
    if (eval::knapsack_select(Eigen::Map<Eigen::VectorXd>(values.data(), n), lengths, cap) != want.chosen) ++mismatches;
  }
  const data::FrameMask machine{1, 1, 1, 1, 0, 0, 0, 0, 0}, user{0, 0, 1, 1, 1, 1, 1, 0, 0};
  const double f = eval::f_measure(machine, user);
  const data::FrameMask none(9, 0);
  const double empty_machine = eval::f_measure(none, user), empty_user = eval::f_measure(machine, none);
  o.detail << "200 instances, " << mismatches << " mismatches; F(P=0.5,R=0.4) " << f << "; empty machine "
           << empty_machine << ", empty user " << empty_user;
  o.require(mismatches == 0, "knapsack oracle");
  o.require(std::abs(f - 4.0 / 9.0) <= kFTolerance, "worked F-measure");
  o.require(empty_machine == 0.0 && empty_user == 0.0, "degenerate conventions");
}

// 3
void loss_formulas(Outcome& o) {
  const double score_sum = train::score_sum_loss(Eigen::VectorXd::Ones(4));
  const double sparsity = train::sparsity_loss(Eigen::Vector2d(0.6, 0.7), 0.15);
  const ad::Var one(ad::Matrix::Ones(1, 1)), zero(ad::Matrix::Zero(1, 1));
  const double prior = model::prior_loss(one, zero).item();
  model::PatchConfig pc;
  pc.feature_size = kSceneDim;
  model::ParamStore store;
  Rng rng(3);
  const model::CriticParams critic = model::create_critic_params(pc, store, rng);
  for (const auto& [name, v] : store.all()) v.mutable_value().setZero();
  const ad::Matrix x = ad::Matrix::Random(40, kSceneDim), xp = ad::Matrix::Random(40, kSceneDim);
  const double penalty = model::gradient_penalty(model::patch_critic(critic), x, xp, 0.3, pc.lambda_gp).item();
  o.detail << "score_sum " << score_sum << ", sparsity " << sparsity << ", prior " << prior << ", penalty " << penalty;
  o.require(std::abs(score_sum - 2.0) <= kLossTolerance, "score-sum");
  o.require(std::abs(sparsity - 0.25) <= kLossTolerance, "sparsity");
  o.require(std::abs(prior - 0.5) <= kLossTolerance, "prior");
  o.require(std::abs(penalty - 10.0) <= kLossTolerance, "gradient penalty");
}

// 4
void patch_mechanism(Outcome& o) {
  const int k = 3;
  int length_errors = 0, locality_errors = 0;
  std::mt19937_64 rng(4004);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int m = 0; m <= 3; ++m) {
    model::PatchConfig pc;
    pc.feature_size = k;
    pc.blocks = m;
    model::ParamStore store;
    Rng init(40 + m);
    const model::CriticParams critic = model::create_critic_params(pc, store, init);
    oracle::randomize(store, 400 + m);
    const double window = std::pow(5.0, m);
    for (int t = 1; t <= 200; ++t) {
      const ad::Matrix x = ad::Matrix::Random(t, k);
      const auto p = model::patch_forward(ad::Var(x), critic.blocks).rows();
      if (p != static_cast<Eigen::Index>(std::ceil(t / window))) ++length_errors;
    }
    if (m == 0) continue;
    const int t = static_cast<int>(2 * window) + 3;
    const ad::Matrix x = ad::Matrix::Random(t, k);
    const ad::Matrix base = model::critic_scores(model::patch_forward(ad::Var(x), critic.blocks), critic.head).value();
    for (int j = 0; j < t; ++j) {
      ad::Matrix y = x;
      for (int c = 0; c < k; ++c) y(j, c) += n(rng);
      const ad::Matrix moved =
          model::critic_scores(model::patch_forward(ad::Var(y), critic.blocks), critic.head).value();
      for (Eigen::Index p = 0; p < base.rows(); ++p) {
        if (j / static_cast<int>(window) != p && moved(p) != base(p)) ++locality_errors;
      }
    }
  }
  // T = 125, M = 3: one patch, every frame reaches it. Positive weights and
  // inputs keep all units active.
  model::PatchConfig pc;
  pc.feature_size = k;
  pc.blocks = 3;
  model::ParamStore store;
  Rng init(77);
  const model::CriticParams critic = model::create_critic_params(pc, store, init);
  oracle::randomize(store, 78);
  for (const auto& [name, v] : store.all()) v.mutable_value() = v.value().cwiseAbs();
  const ad::Var x = ad::Var::parameter(ad::Matrix::Random(125, k).cwiseAbs());
  const ad::Var s = model::critic_scores(model::patch_forward(x, critic.blocks), critic.head);
  const ad::Matrix g = ad::grad(ad::sum(s), {x})[0].value();
  int reached = 0;
  for (Eigen::Index j = 0; j < 125; ++j) reached += g.row(j).cwiseAbs().sum() > 0.0;
  o.detail << "length errors " << length_errors << " (T 1..200, M 0..3), locality violations " << locality_errors
           << ", T=125 M=3: " << s.rows() << " patch, " << reached << "/125 frames in its field";
  o.require(length_errors == 0, "length law");
  o.require(locality_errors == 0, "locality");
  o.require(s.rows() == 1 && reached == 125, "125-frame receptive field");
}

// 5
void gradients(Outcome& o) {
  model::SummarizerConfig sc;
  sc.d_entity = 4;
  sc.d_scene = 6;
  sc.gcn_hidden = 5;
  sc.mlp_hidden = 7;
  model::VaeConfig vc;
  vc.d_input = 6;
  vc.d_hidden = 5;
  vc.d_latent = 3;
  model::PatchConfig pc;
  pc.feature_size = 3;
  pc.blocks = 2;
  std::mt19937_64 rng(5005);
  std::map<std::string, double> worst;
  for (int point = 0; point < 5; ++point) {
    model::ParamStore store;
    Rng init(500 + point);
    const auto sp = model::create_summarizer_params(sc, store, init);
    const auto vp = model::create_vae_params(vc, store, init);
    const auto cp = model::create_critic_params(pc, store, init);
    oracle::randomize(store, 600 + point);
    const auto d = oracle::random_detections(rng, 5, 3, sc.d_entity, true);
    const model::GraphInput graph = model::graph_for(d, sc);
    const ad::Var scene(ad::Matrix::Random(5, sc.d_scene));
    const ad::Var fo(ad::Matrix::Random(5, sc.gcn_hidden));
    const ad::Var z(ad::Matrix::Random(1, vc.d_latent));
    const ad::Var seq(ad::Matrix::Random(27, pc.feature_size));
    auto check = [&](const std::string& name, const std::function<ad::Var()>& f, const std::string& prefix) {
      const double e = oracle::gradient_relative_error(f, store.with_prefix(prefix));
      worst[name] = std::max(worst[name], e);
    };
    check("gcn", [&] { return ad::sum(model::gcn_forward(graph, sp.gcn)); }, "summarizer.gcn.");
    check("fusion", [&] { return ad::sum(model::fuse_and_score(fo, scene, sp.fusion)); }, "summarizer.fusion.");
    check("difference", [&] { return ad::sum(model::difference_attention(scene, sp.difference)); },
          "summarizer.difference.");
    check("encoder", [&] {
      const auto p = model::encode(scene, vp);
      return ad::add(ad::sum(p.mu), ad::sum(p.logvar));
    }, "vae.encoder.");
    check("decoder", [&] { return ad::sum(model::decode(z, 5, vp)); }, "vae.decoder.");
    check("patch critic", [&] { return ad::sum(model::patch_critic(cp)(seq)); }, "critic.block.");
  }
  bool ok = true;
  for (const auto& [name, e] : worst) {
    o.detail << name << " " << e << "; ";
    ok &= e <= kGradientTolerance;
  }
  o.require(ok, "relative error above 1e-4");
}

// 6 and 8
struct SmokeRun {
  std::vector<train::StepRecord> log;
  std::string checkpoint_digest;
  double recon_ratio = 0.0;
};

SmokeRun smoke_run() {
  const data::Dataset data = data::generate_synthetic(synthetic(3));
  train::EraModel model(config(11, 12));
  const train::FitResult fit = train::fit_model(model, data, data::video_ids(data));
  SmokeRun run;
  run.log = fit.log;
  run.checkpoint_digest = sha256_hex(model::serialize_checkpoint(fit.last));

  train::EraModel single(config(11, 1));
  train::Trainer trainer(single);
  Rng rng = substream(11, "acceptance.recon");
  double first = 0.0, last = 0.0;
  for (int step = 0; step < 200; ++step) {
    const auto r = trainer.train_on(data[0], 1, rng);
    if (step == 0) first = r.terms.at("recon");
    last = r.terms.at("recon");
    if (!all_finite(r)) first = std::nan("");
  }
  run.recon_ratio = last / first;
  return run;
}

void training_smoke(Outcome& o, SmokeRun& run) {
  run = smoke_run();
  bool finite = true;
  int lr_mismatch = 0, epoch11 = 0;
  for (const auto& r : run.log) {
    finite &= all_finite(r);
    const double want = r.epoch <= 10 ? 1e-4 : 1e-5;
    if (std::abs(r.lr - want) > kLrTolerance) ++lr_mismatch;
    if (r.epoch == 11) ++epoch11;
  }
  double lr11 = 0.0;
  for (const auto& r : run.log) {
    if (r.epoch == 11) lr11 = r.lr;
  }
  o.detail << run.log.size() << " steps over 12 epochs, all terms finite: " << (finite ? "yes" : "no")
           << ", lr at epoch 11 " << lr11 << ", recon after 200 steps / initial " << run.recon_ratio;
  o.require(run.log.size() == 36, "step count");
  o.require(finite, "non-finite loss term");
  o.require(epoch11 == 3 && lr_mismatch == 0, "learning-rate schedule");
  o.require(run.recon_ratio <= kReconRatio, "reconstruction did not halve");
}

void determinism(Outcome& o, const SmokeRun& first) {
  const SmokeRun second = smoke_run();
  const std::string a = sha256_hex(log_text(first.log)), b = sha256_hex(log_text(second.log));
  o.detail << "log " << a.substr(0, 16) << " vs " << b.substr(0, 16) << ", checkpoint "
           << first.checkpoint_digest.substr(0, 16) << " vs " << second.checkpoint_digest.substr(0, 16);
  o.require(a == b, "log digest differs");
  o.require(first.checkpoint_digest == second.checkpoint_digest, "checkpoint digest differs");
}

// 7
void end_to_end(Outcome& o) {
  const data::Dataset data = data::generate_synthetic(synthetic(20));
  const auto ids = data::video_ids(data);
  const data::SplitSet splits = data::generate_splits(ids, 5, data::SplitMode::kNonOverlapping, 0);
  std::multiset<std::string> tested;
  for (const auto& f : splits.folds) tested.insert(f.test_ids.begin(), f.test_ids.end());
  const bool partition = tested == std::multiset<std::string>(ids.begin(), ids.end());
  o.require(partition, "test folds do not partition the videos");

  bool all_better = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    std::vector<std::shared_ptr<train::EraModel>> models;
    std::vector<eval::Scorer> scorers;
    for (const auto& fold : splits.folds) {
      auto model = std::make_shared<train::EraModel>(config(seed, train::TrainConfig().epochs));
      const train::FitResult fit = train::fit_model(*model, data, fold.train_ids);
      model->load(fit.best);
      scorers.push_back([model](const data::Video& v) { return model->score(v).s_final; });
    }
    const eval::EvalReport trained = eval::evaluate_split(data, splits, scorers);
    const eval::EvalReport random =
        eval::evaluate_split(data, splits, std::vector<eval::Scorer>(5, cli::random_scorer(seed)));
    o.detail << "seed " << seed << ": trained " << trained.f_avg << " vs random " << random.f_avg << "; ";
    all_better &= trained.f_avg > random.f_avg;
  }
  o.detail << "non-overlapping partition: " << (partition ? "yes" : "no");
  o.require(all_better, "trained model does not beat the random baseline for every seed");
}

// 9
void ablation_grid(Outcome& o) {
  const data::Dataset data = data::generate_synthetic(synthetic(3));
  int ok = 0;
  for (int bits = 0; bits < 32; ++bits) {
    train::ExperimentConfig c = config(9, 1);
    auto& t = c.train.toggles;
    t.use_stgcn = bits & 1;
    t.use_diff_attention = bits & 2;
    t.use_wgan = bits & 4;
    t.use_patch = bits & 8;
    t.use_score_sum = bits & 16;
    try {
      train::EraModel model(c);
      const train::FitResult fit = train::fit_model(model, data, data::video_ids(data));
      bool finite = fit.log.size() == 3;
      for (const auto& r : fit.log) finite &= all_finite(r);
      ok += finite;
      if (!finite) o.detail << "combination " << bits << " produced a bad log; ";
    } catch (const std::exception& e) {
      o.detail << "combination " << bits << ": " << e.what() << "; ";
    }
  }
  o.detail << ok << "/32 toggle combinations trained one epoch";
  o.require(ok == 32, "ablation grid");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<void(Outcome&)> run;
  };
  SmokeRun smoke;
  const std::vector<Criterion> criteria = {
      {1, "graph oracle equivalence", kBudgetGraph, graph_oracle},
      {2, "knapsack and F-measure oracles", kBudgetKnapsack, knapsack_and_f},
      {3, "loss formulas", 0.0, loss_formulas},
      {4, "patch mechanism", kBudgetPatch, patch_mechanism},
      {5, "gradient correctness", 0.0, gradients},
      {6, "training smoke and schedule", kBudgetSmoke, [&](Outcome& o) { training_smoke(o, smoke); }},
      {7, "end-to-end protocol", kBudgetProtocol, end_to_end},
      {8, "determinism", 0.0, [&](Outcome& o) { determinism(o, smoke); }},
      {9, "ablation grid", 0.0, ablation_grid},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    if (c.budget > 0.0) o.require(elapsed < c.budget, "over the " + std::to_string(c.budget) + " s budget");
    failed += !o.pass;
    std::printf("%s  criterion %d  %s  (%.2f s)  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, elapsed,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
