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

#ifndef DBANDIT_ENVIRONMENT_HPP_
#define DBANDIT_ENVIRONMENT_HPP_

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "dbandit/datasets.hpp"
#include "dbandit/delay.hpp"
#include "dbandit/rng.hpp"

namespace dbandit {

// Classification data turned into a K-armed problem by the disjoint
// transform; arm label+1 pays `correct_reward`, every other arm pays
// `wrong_reward`.
struct DatasetSource {
  std::shared_ptr<const std::vector<LabeledSample>> samples;
  double correct_reward = 1.0;
  double wrong_reward = 0.0;
};

// Each arm gets an independent uniform direction on the unit sphere in R^dim;
// h is a clipped function of a^T x with `a` fixed by `function_seed`.
struct SyntheticSource {
  SyntheticKind kind = SyntheticKind::kLinear;
  int dim = 2;
  std::uint64_t function_seed = 0;
};

struct EnvironmentSpec {
  std::variant<DatasetSource, SyntheticSource> source;
  int arms = 2;
  double noise_sigma = 0.0;
  DelayDistribution delay = NoDelay{};
  bool mirror_contexts = false;

  void validate() const;
};

struct EnvironmentSeeds {
  std::uint64_t context = 0;
  std::uint64_t noise = 0;
  std::uint64_t delay = 0;

  static EnvironmentSeeds from(std::uint64_t seed) { return {seed, seed, seed}; }
};

struct StepOutcome {
  double reward = 0.0;      // h(x_{t,a_t}) + noise
  double mean_reward = 0.0; // h(x_{t,a_t})
  double delay = 0.0;
  double regret = 0.0;      // max_a h(x_{t,a}) - h(x_{t,a_t})
  int best_arm = 1;
};

class Environment {
 public:
  Environment(EnvironmentSpec spec, EnvironmentSeeds seeds);

  int arms() const { return spec_.arms; }
  // Dimension of the contexts handed to the learner.
  int context_dim() const { return context_dim_; }

  // Contexts for round t (t = 1, 2, ... in order), as seen by the learner.
  const ContextSet& observe(int t);

  // Reward, delay and regret for playing `action` (1-based) in round t.
  StepOutcome step(int t, int action);

  // Mean rewards of the arms of the current round; never shown to the learner.
  const std::vector<double>& mean_rewards() const { return means_; }

  const EnvironmentSpec& spec() const { return spec_; }

 private:
  void next_dataset_round();
  void next_synthetic_round();

  EnvironmentSpec spec_;
  Rng context_rng_;
  Rng noise_rng_;
  Rng delay_rng_;
  RewardFunction h_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
  int current_round_ = 0;
  int context_dim_ = 0;
  ContextSet contexts_;
  std::vector<double> means_;
};

}  // namespace dbandit

#endif  // DBANDIT_ENVIRONMENT_HPP_
