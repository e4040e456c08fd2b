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

#include "dbandit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "dbandit/datasets.hpp"
#include "dbandit/delay.hpp"
#include "dbandit/errors.hpp"

namespace dbandit {

EnvironmentSpec build_environment(const ExperimentConfig& cfg) {
  EnvironmentSpec spec;
  spec.arms = cfg.arms;
  spec.noise_sigma = std::sqrt(cfg.environment.noise_variance);
  spec.delay = cfg.effective_delay();
  spec.mirror_contexts = cfg.environment.mirror_contexts;
  if (const auto& ref = cfg.environment.dataset) {
    std::vector<LabeledSample> samples;
    if (ref->kind == "mushroom") {
      samples = load_mushroom_csv(resolve_data_path(ref->path));
    } else {
      samples = load_idx(resolve_data_path(ref->path), resolve_data_path(ref->labels_path));
    }
    if (ref->max_samples > 0 && samples.size() > ref->max_samples)
      samples.resize(ref->max_samples);
    spec.source = DatasetSource{
        std::make_shared<const std::vector<LabeledSample>>(std::move(samples)), 1.0,
        cfg.environment.wrong_class_reward};
  } else {
    spec.source = cfg.environment.synthetic;
  }
  spec.validate();
  return spec;
}

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg, int context_dim,
                                    std::uint64_t seed) {
  const PolicyConfig p = cfg.resolved_policy(context_dim);
  if (is_neural(cfg.algorithm)) return std::make_unique<NeuralPolicy>(p, seed);
  return std::make_unique<LinearPolicy>(p, static_cast<std::size_t>(context_dim), seed);
}

RunResult run_single(const ExperimentConfig& cfg, const EnvironmentSpec& env_spec,
                     std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  Environment env(env_spec, EnvironmentSeeds::from(seed));
  auto policy = make_policy(cfg, env.context_dim(), seed);
  RevealQueue queue;

  RunResult result;
  result.seed = seed;
  result.rows.reserve(static_cast<std::size_t>(cfg.horizon));
  double cum = 0.0;
  for (int t = 1; t <= cfg.horizon; ++t) {
    const ContextSet& contexts = env.observe(t);
    const Selection sel = policy->select(contexts);
    const StepOutcome out = env.step(t, sel.arm);
    queue.schedule(t, out.delay,
                   BanditRecord{t, contexts[static_cast<std::size_t>(sel.arm - 1)],
                                sel.arm, out.reward});
    policy->ingest(queue.pop_revealed(t));
    cum += out.regret;
    result.rows.push_back(RoundRow{t, sel.arm, out.regret, cum, policy->revealed_count(),
                                   policy->pending_count(), policy->gamma()});
  }
  result.summary.final_regret = cum;
  if (const auto* neural = dynamic_cast<const NeuralPolicy*>(policy.get()))
    result.summary.max_scaled_grad_norm = neural->max_scaled_grad_norm();
  result.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  const EnvironmentSpec env = build_environment(cfg);
  std::vector<RunResult> results(cfg.seeds.size());
  const int workers =
      std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(cfg.seeds.size(), 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
      results[i] = run_single(cfg, env, cfg.seeds[i]);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cfg.seeds.size(); i = next++) {
        try {
          results[i] = run_single(cfg, env, cfg.seeds[i]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

RegretCurves aggregate(std::span<const RunResult> results) {
  if (results.empty()) throw ArgumentError("aggregate needs at least one run");
  const std::size_t horizon = results.front().rows.size();
  for (const auto& r : results)
    if (r.rows.size() != horizon)
      throw ArgumentError("aggregate: runs have different horizons");
  RegretCurves curves;
  curves.mean.assign(horizon, 0.0);
  curves.min.assign(horizon, 0.0);
  curves.max.assign(horizon, 0.0);
  for (std::size_t t = 0; t < horizon; ++t) {
    double sum = 0.0;
    double lo = results.front().rows[t].cum_regret;
    double hi = lo;
    for (const auto& r : results) {
      const double v = r.rows[t].cum_regret;
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    curves.mean[t] = sum / static_cast<double>(results.size());
    curves.min[t] = lo;
    curves.max[t] = hi;
  }
  return curves;
}

AnalysisResult analyze(const ExperimentConfig& cfg, const EnvironmentSpec& env_spec) {
  Environment env(env_spec, EnvironmentSeeds::from(cfg.seeds.front()));
  std::vector<Vector> contexts;
  for (int t = 1; t <= cfg.analysis.rounds; ++t)
    for (const auto& x : env.observe(t))
      if (x.norm() > 0.0) contexts.push_back(x);
  if (contexts.empty()) throw DegenerateContextError("no nonzero contexts to analyze");

  const PolicyConfig p = cfg.resolved_policy(env.context_dim());
  AnalysisResult out;
  out.contexts = contexts.size();
  const NtkGram gram = ntk_gram(contexts, p.shape.depth);
  out.d_tilde =
      effective_dimension(gram.h, p.lambda, static_cast<double>(contexts.size()));
  out.min_eigenvalue = smallest_eigenvalue(gram.h);

  const double expected = mean_delay(cfg.effective_delay());
  out.delay = d_plus({static_cast<double>(cfg.horizon), p.delta, expected,
                      cfg.analysis.alpha, cfg.analysis.b});

  const int points = cfg.analysis.curve_points;
  for (int k = 1; k <= points; ++k) {
    const int horizon = std::max(1, static_cast<int>(static_cast<long>(cfg.horizon) * k / points));
    RegretBoundInputs in;
    in.horizon = horizon;
    in.arms = cfg.arms;
    in.lambda = p.lambda;
    in.nu = p.nu;
    in.delta = p.delta;
    in.norm_s = p.norm_s;
    in.eta = p.train.eta;
    in.width = p.shape.width;
    in.depth = p.shape.depth;
    in.c4 = cfg.analysis.c4;
    in.d_tilde = out.d_tilde;
    in.sqrt_lambda_times_s = p.sqrt_lambda_times_s;
    const auto* fixed = std::get_if<FixedSteps>(&p.step_schedule);
    in.steps = fixed ? fixed->steps : horizon;
    in.d_plus = d_plus({static_cast<double>(horizon), p.delta, expected,
                        cfg.analysis.alpha, cfg.analysis.b})
                    .d_plus;
    out.bound_curve.push_back({horizon, regret_bound(in)});
  }
  return out;
}

}  // namespace dbandit
