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

#ifndef DBANDIT_CONFIG_HPP_
#define DBANDIT_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dbandit/delay.hpp"
#include "dbandit/environment.hpp"
#include "dbandit/policy.hpp"

namespace dbandit {

enum class Algorithm {
  kDelayedNeuralUcb,
  kDelayedNeuralTs,
  kNeuralUcb,
  kNeuralTs,
  kLinUcb,
  kLinTs,
};

std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);
bool is_neural(Algorithm algo);
// Only the delayed-* algorithms see the configured delay; the rest are the
// immediate-feedback baselines.
bool uses_delay(Algorithm algo);
Exploration exploration_of(Algorithm algo);

struct DatasetRef {
  std::string kind;         // "mushroom" or "mnist"
  std::string path;         // CSV, or IDX images for mnist
  std::string labels_path;  // IDX labels for mnist
  std::size_t max_samples = 0;  // 0 keeps every sample
};

struct EnvironmentConfig {
  std::optional<DatasetRef> dataset;
  SyntheticSource synthetic;
  double noise_variance = 0.001;
  bool mirror_contexts = false;
  double wrong_class_reward = 0.0;
};

struct AnalysisConfig {
  bool enabled = false;
  int rounds = 20;        // rounds of contexts fed to the NTK Gram (n = rounds*K)
  double alpha = 0.0;     // sub-exponential (alpha, b) of the delay
  double b = 0.0;
  double c4 = 1.0;
  int curve_points = 10;
};

enum class DesignChoice { kAuto, kFull, kDiagonal };

struct ExperimentConfig {
  int horizon = 2000;
  int arms = 2;
  Algorithm algorithm = Algorithm::kDelayedNeuralUcb;
  PolicyConfig policy;
  DesignChoice design = DesignChoice::kAuto;
  EnvironmentConfig environment;
  DelayDistribution delay = UniformDelay{60.0};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::string output_dir = "results";
  AnalysisConfig analysis;

  // Every violated field, one message each; empty when valid.
  std::vector<std::string> problems() const;
  // Throws ConfigError carrying every problem.
  void validate() const;

  // Policy block with shape, exploration and design mode resolved against a
  // learner context dimension.
  PolicyConfig resolved_policy(int context_dim) const;
  // Delay seen by this algorithm (none for immediate-feedback baselines).
  DelayDistribution effective_delay() const;
};

// Design matrices above this parameter count default to diagonal.
inline constexpr std::size_t kAutoFullDesignLimit = 4096;

// Parses the JSON config format; throws ConfigError listing every problem.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON rendering of a config (resolved delay included).
std::string config_to_json(const ExperimentConfig& cfg, int indent = 2);

// Relative dataset paths resolve against $DELAYED_BANDIT_DATA when set.
std::filesystem::path resolve_data_path(const std::string& path);

}  // namespace dbandit

#endif  // DBANDIT_CONFIG_HPP_
