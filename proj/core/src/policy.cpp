// Copyright 2026 The dbandit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dbandit/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dbandit/errors.hpp"

namespace dbandit {

void PolicyConfig::validate() const {
  shape.validate();
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(nu >= 0.0)) throw ConfigError("nu must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (!(norm_s >= 0.0)) throw ConfigError("S must be >= 0");
  if (c1 < 0.0 || c2 < 0.0 || c3 < 0.0)
    throw ConfigError("C1, C2, C3 must be >= 0");
  if (!(lin_alpha >= 0.0)) throw ConfigError("lin_alpha must be >= 0");
  if (const auto* fixed = std::get_if<FixedSteps>(&step_schedule);
      fixed && fixed->steps < 0)
    throw ConfigError("fixed step count must be >= 0");
  TrainSpec check = train;
  check.lambda = lambda;
  check.validate();
}

namespace {

double confidence_offset(const PolicyConfig& cfg) {
  return cfg.sqrt_lambda_times_s ? std::sqrt(cfg.lambda) * cfg.norm_s
                                 : std::sqrt(cfg.lambda * cfg.norm_s);
}

}  // namespace

double gamma_t(const PolicyConfig& cfg, std::int64_t revealed, double logdet,
               int steps) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw ConfigError("delta must lie in (0,1)");
  if (revealed < 0) throw ArgumentError("revealed count must be >= 0");
  if (logdet < 0.0) logdet = 0.0;  // round-off below the lambda*I floor

  if (const auto* c = std::get_if<ConstantGamma>(&cfg.gamma_mode)) return c->value;
  const double offset = confidence_offset(cfg);
  if (std::holds_alternative<SimpleUcbGamma>(cfg.gamma_mode))
    return cfg.nu * std::sqrt(logdet - 2.0 * std::log(cfg.delta)) + offset;

  const double m = cfg.shape.width;
  const double depth = cfg.shape.depth;
  const double lambda = cfg.lambda;
  const double n = static_cast<double>(revealed);
  const double contraction = 1.0 - cfg.train.eta * m * lambda;
  if (contraction < 0.0)
    throw ConfigError("eta * m * lambda must be <= 1 for the theoretical radius");

  const double width_term = std::pow(m, -1.0 / 6.0) * std::sqrt(std::log(m));
  const double l4 = std::pow(depth, 4.0);
  const double inflation = std::sqrt(
      1.0 + cfg.c1 * width_term * l4 * std::pow(n, 7.0 / 6.0) *
                std::pow(lambda, -7.0 / 6.0));
  const double radius =
      cfg.nu * std::sqrt(logdet +
                         cfg.c2 * width_term * l4 * std::pow(n, 5.0 / 3.0) *
                             std::pow(lambda, -1.0 / 6.0) -
                         2.0 * std::log(cfg.delta)) +
      offset;
  const double root_n = std::sqrt(n / lambda);
  const double optimization =
      std::pow(contraction, steps / 2.0) * root_n +
      width_term * std::pow(depth, 3.5) * std::pow(n, 5.0 / 3.0) *
          std::pow(lambda, -5.0 / 3.0) * (1.0 + root_n);
  return inflation * radius + (lambda + cfg.c3 * n * depth) * optimization;
}

int argmax_lowest(std::span<const double> scores) {
  if (scores.empty()) throw ArgumentError("argmax over an empty score list");
  std::size_t best = 0;
  for (std::size_t a = 1; a < scores.size(); ++a)
    if (scores[a] > scores[best]) best = a;
  return static_cast<int>(best) + 1;
}

void RevealLedger::record_selection(int round, Vector context, int action) {
  if (!pending_.emplace(round, Pending{std::move(context), action}).second)
    throw ProtocolError("round " + std::to_string(round) + " selected twice");
}

const BanditRecord& RevealLedger::reveal(int round, double reward) {
  auto it = pending_.find(round);
  if (it == pending_.end())
    throw ProtocolError("reward for round " + std::to_string(round) +
                        " revealed but that round is not pending");
  revealed_.push_back(
      BanditRecord{round, std::move(it->second.context), it->second.action, reward});
  pending_.erase(it);
  return revealed_.back();
}

std::vector<BanditRecord> Policy::validated_batch(
    std::span<const BanditRecord> batch) const {
  std::vector<BanditRecord> sorted(batch.begin(), batch.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const BanditRecord& a, const BanditRecord& b) {
                     return a.round < b.round;
                   });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!ledger_.is_pending(sorted[i].round) ||
        (i > 0 && sorted[i].round == sorted[i - 1].round))
      throw ProtocolError("reward for round " + std::to_string(sorted[i].round) +
                          " revealed but that round is not pending");
  }
  return sorted;
}

NeuralPolicy::NeuralPolicy(PolicyConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      design_(cfg_.shape.param_count(), cfg_.lambda, cfg_.design_mode),
      explore_rng_(make_rng(seed, Stream::kPolicy)),
      train_rng_(make_rng(seed, Stream::kTrain)) {
  cfg_.validate();
  cfg_.train.lambda = cfg_.lambda;
  Rng init_rng = make_rng(seed, Stream::kInit);
  theta0_ = init_symmetric(cfg_.shape, init_rng);
  theta_ = theta0_;
  grad_ = Vector::Zero(theta0_.values.size());
  gamma_ = gamma_t(cfg_, 0, 0.0, steps_for_round());
}

int NeuralPolicy::steps_for_round() const {
  if (const auto* fixed = std::get_if<FixedSteps>(&cfg_.step_schedule))
    return fixed->steps;
  return round_;
}

Selection NeuralPolicy::select(std::span<const Vector> contexts) {
  if (contexts.empty()) throw ArgumentError("select needs at least one arm");
  const double inv_root_m = 1.0 / std::sqrt(static_cast<double>(cfg_.shape.width));
  Selection sel;
  sel.scores.reserve(contexts.size());
  std::normal_distribution<double> standard(0.0, 1.0);
  for (const auto& x : contexts) {
    const double mean = forward_backward(theta_, x, grad_);
    grad_ *= inv_root_m;
    max_grad_norm_ = std::max(max_grad_norm_, grad_.norm());
    const double q = design_.quad_form(grad_);
    const double width = std::sqrt(q);
    double score;
    if (cfg_.exploration == Exploration::kUcb) {
      score = mean + gamma_ * width;
    } else {
      const double sigma = std::sqrt(cfg_.lambda * q);
      score = mean + cfg_.nu * sigma * standard(explore_rng_);
    }
    sel.means.push_back(mean);
    sel.widths.push_back(width);
    sel.scores.push_back(score);
  }
  sel.arm = argmax_lowest(sel.scores);
  ++round_;
  ledger_.record_selection(round_, contexts[sel.arm - 1], sel.arm);
  return sel;
}

void NeuralPolicy::ingest(std::span<const BanditRecord> batch) {
  const auto sorted = validated_batch(batch);
  const double inv_root_m = 1.0 / std::sqrt(static_cast<double>(cfg_.shape.width));
  for (const auto& rec : sorted) {
    const BanditRecord& revealed = ledger_.reveal(rec.round, rec.reward);
    // Gradients use the parameters in force before this round's retrain.
    forward_backward(theta_, revealed.context, grad_);
    grad_ *= inv_root_m;
    design_.rank1_update(grad_);
  }

  const bool retrain =
      ledger_.revealed_count() > 0 &&
      (cfg_.retrain_trigger == RetrainTrigger::kEveryRound || !sorted.empty());
  const int steps = steps_for_round();
  if (retrain) {
    TrainSpec spec = cfg_.train;
    spec.steps = steps;
    theta_ = train_nn(cfg_.warm_start ? theta_ : theta0_, theta0_,
                      ledger_.revealed(), spec, train_rng_);
  }
  gamma_ = gamma_t(cfg_, static_cast<std::int64_t>(ledger_.revealed_count()),
                   design_.logdet_ratio(), steps);
}

}  // namespace dbandit
