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

#ifndef DBANDIT_POLICY_HPP_
#define DBANDIT_POLICY_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dbandit/design_matrix.hpp"
#include "dbandit/network.hpp"
#include "dbandit/rng.hpp"

namespace dbandit {

struct TheoreticalGamma {};
struct SimpleUcbGamma {};
struct ConstantGamma {
  double value = 1.0;
};
using GammaMode = std::variant<TheoreticalGamma, SimpleUcbGamma, ConstantGamma>;

enum class Exploration { kUcb, kThompson };
enum class RetrainTrigger { kEveryRound, kOnReveal };

// Number of gradient steps per retrain: a fixed count, or J = t at round t.
struct FixedSteps {
  int steps = 0;
};
struct RoundSteps {};
using StepSchedule = std::variant<FixedSteps, RoundSteps>;

struct PolicyConfig {
  NetworkShape shape{2, 128, 2};
  double lambda = 1.0;
  double nu = 1.0;
  double delta = 0.05;
  double norm_s = 1e-4;
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  GammaMode gamma_mode = TheoreticalGamma{};
  // true: the confidence offset is sqrt(lambda)*S; false: sqrt(lambda*S).
  bool sqrt_lambda_times_s = true;
  Exploration exploration = Exploration::kUcb;
  DesignMode design_mode = DesignMode::kFull;
  TrainSpec train{1.0, 0.001, 0, MiniBatch{64}};
  StepSchedule step_schedule = RoundSteps{};
  bool warm_start = false;
  RetrainTrigger retrain_trigger = RetrainTrigger::kEveryRound;
  // Linear baselines only.
  double lin_alpha = 1.0;

  void validate() const;
};

// UCB radius after `revealed` rewards with log det(Z)/det(lambda I) = logdet.
// `steps` is the gradient-step count J entering the optimization-error term.
double gamma_t(const PolicyConfig& cfg, std::int64_t revealed, double logdet,
               int steps);

struct Selection {
  int arm = 1;                   // 1-based
  std::vector<double> scores;    // U_{t,a} for UCB, sampled reward for TS
  std::vector<double> means;     // model prediction per arm
  std::vector<double> widths;    // sqrt(u^T Z^{-1} u) per arm
};

// Reveal bookkeeping shared by every policy: rounds whose reward is still
// outstanding, and the ordered list of revealed interactions.
class RevealLedger {
 public:
  struct Pending {
    Vector context;
    int action = 0;
  };

  void record_selection(int round, Vector context, int action);
  // Moves a round from pending to revealed. Throws ProtocolError when the
  // round is not pending.
  const BanditRecord& reveal(int round, double reward);
  bool is_pending(int round) const { return pending_.contains(round); }

  std::size_t pending_count() const { return pending_.size(); }
  std::size_t revealed_count() const { return revealed_.size(); }
  std::span<const BanditRecord> revealed() const { return revealed_; }

 private:
  std::map<int, Pending> pending_;
  std::vector<BanditRecord> revealed_;
};

class Policy {
 public:
  virtual ~Policy() = default;

  // Chooses an arm for the next round; advances the round counter.
  virtual Selection select(std::span<const Vector> contexts) = 0;

  // Consumes the rewards revealed at the end of the current round.
  virtual void ingest(std::span<const BanditRecord> batch) = 0;

  virtual double gamma() const = 0;
  virtual std::size_t design_updates() const = 0;

  int round() const { return round_; }
  std::size_t revealed_count() const { return ledger_.revealed_count(); }
  std::size_t pending_count() const { return ledger_.pending_count(); }
  const RevealLedger& ledger() const { return ledger_; }

 protected:
  // Sorts the batch by round and checks every record is pending.
  std::vector<BanditRecord> validated_batch(
      std::span<const BanditRecord> batch) const;

  int round_ = 0;
  RevealLedger ledger_;
};

// Delayed NeuralUCB / Delayed NeuralTS. Without delays it reduces to the
// classic NeuralUCB / NeuralTS update.
class NeuralPolicy final : public Policy {
 public:
  NeuralPolicy(PolicyConfig cfg, std::uint64_t seed);

  Selection select(std::span<const Vector> contexts) override;
  void ingest(std::span<const BanditRecord> batch) override;

  double gamma() const override { return gamma_; }
  std::size_t design_updates() const override { return design_.update_count(); }

  const ParamVector& theta() const { return theta_; }
  const ParamVector& theta0() const { return theta0_; }
  const DesignMatrix& design() const { return design_; }
  const PolicyConfig& config() const { return cfg_; }
  // Largest |g(x; theta)| / sqrt(m) seen so far.
  double max_scaled_grad_norm() const { return max_grad_norm_; }

 private:
  int steps_for_round() const;

  PolicyConfig cfg_;
  ParamVector theta0_;
  ParamVector theta_;
  DesignMatrix design_;
  Rng explore_rng_;
  Rng train_rng_;
  double gamma_ = 0.0;
  double max_grad_norm_ = 0.0;
  Vector grad_;
};

// Ridge-regression baselines: LinUCB (alpha * sqrt(x^T A^{-1} x) bonus) and
// LinTS (theta ~ N(theta_hat, nu^2 A^{-1})).
class LinearPolicy final : public Policy {
 public:
  LinearPolicy(PolicyConfig cfg, std::size_t dim, std::uint64_t seed);

  Selection select(std::span<const Vector> contexts) override;
  void ingest(std::span<const BanditRecord> batch) override;

  double gamma() const override;
  std::size_t design_updates() const override { return design_.update_count(); }

  Vector theta_hat() const { return design_.solve(b_); }

 private:
  PolicyConfig cfg_;
  DesignMatrix design_;
  Vector b_;
  Rng explore_rng_;
};

// Lowest index among the maxima of `scores`, 1-based.
int argmax_lowest(std::span<const double> scores);

}  // namespace dbandit

#endif  // DBANDIT_POLICY_HPP_
