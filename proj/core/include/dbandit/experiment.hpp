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

#ifndef DBANDIT_EXPERIMENT_HPP_
#define DBANDIT_EXPERIMENT_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dbandit/config.hpp"
#include "dbandit/environment.hpp"
#include "dbandit/ntk.hpp"
#include "dbandit/policy.hpp"

namespace dbandit {

struct RoundRow {
  int round = 0;
  int arm = 0;
  double regret = 0.0;
  double cum_regret = 0.0;
  std::size_t revealed = 0;
  std::size_t pending = 0;
  double gamma = 0.0;
};

struct RunSummary {
  double final_regret = 0.0;
  double wall_seconds = 0.0;
  // Largest |g(x;theta)|/sqrt(m) observed (neural policies only).
  std::optional<double> max_scaled_grad_norm;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<RoundRow> rows;
  RunSummary summary;
};

struct RegretCurves {
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
};

struct BoundPoint {
  int horizon = 0;
  double bound = 0.0;
};

struct AnalysisResult {
  std::size_t contexts = 0;
  double d_tilde = 0.0;
  double min_eigenvalue = 0.0;
  DelayConstants delay;
  std::vector<BoundPoint> bound_curve;
};

// Loads datasets and resolves the environment the configured algorithm sees.
EnvironmentSpec build_environment(const ExperimentConfig& cfg);

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg, int context_dim,
                                    std::uint64_t seed);

// One replicate: the observe / select / step / schedule / reveal / ingest loop.
RunResult run_single(const ExperimentConfig& cfg, const EnvironmentSpec& env,
                     std::uint64_t seed);

// Every configured seed, up to `jobs` at a time; results follow cfg.seeds.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, int jobs = 1);

// Pointwise mean / min / max of the cumulative-regret curves.
RegretCurves aggregate(std::span<const RunResult> results);

// NTK effective dimension on contexts drawn from the environment, D_+ for the
// configured delay, and the regret-bound curve up to the horizon.
AnalysisResult analyze(const ExperimentConfig& cfg, const EnvironmentSpec& env);

}  // namespace dbandit

#endif  // DBANDIT_EXPERIMENT_HPP_
