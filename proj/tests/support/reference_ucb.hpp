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

// Plain immediate-feedback NeuralUCB written directly against the network and
// design-matrix primitives: every reward is used the round it is produced, no
// reveal queue or pending bookkeeping is involved.

#ifndef DBANDIT_TESTS_REFERENCE_UCB_HPP_
#define DBANDIT_TESTS_REFERENCE_UCB_HPP_

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "dbandit/design_matrix.hpp"
#include "dbandit/environment.hpp"
#include "dbandit/network.hpp"
#include "dbandit/policy.hpp"

namespace dbandit::testing {

struct ReferenceTrace {
  std::vector<int> arms;
  std::vector<double> cum_regret;
};

inline ReferenceTrace reference_neural_ucb(const PolicyConfig& cfg,
                                           const EnvironmentSpec& spec,
                                           std::uint64_t seed, int horizon) {
  Environment env(spec, EnvironmentSeeds::from(seed));
  Rng init = make_rng(seed, Stream::kInit);
  Rng train = make_rng(seed, Stream::kTrain);
  const ParamVector theta0 = init_symmetric(cfg.shape, init);
  ParamVector theta = theta0;
  DesignMatrix z(theta0.size(), cfg.lambda, cfg.design_mode);
  std::vector<BanditRecord> data;
  const double inv_root_m = 1.0 / std::sqrt(static_cast<double>(cfg.shape.width));

  auto steps_at = [&](int t) {
    if (const auto* f = std::get_if<FixedSteps>(&cfg.step_schedule)) return f->steps;
    return t;
  };
  double gamma = gamma_t(cfg, 0, 0.0, steps_at(0));

  ReferenceTrace trace;
  double cum = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    const ContextSet& xs = env.observe(t);
    int best = 0;
    double best_score = 0.0;
    for (std::size_t a = 0; a < xs.size(); ++a) {
      Vector g = gradient(theta, xs[a]).values;
      g *= inv_root_m;
      const double score = forward(theta, xs[a]) + gamma * std::sqrt(z.quad_form(g));
      if (a == 0 || score > best_score) {
        best = static_cast<int>(a);
        best_score = score;
      }
    }
    const int arm = best + 1;
    const StepOutcome out = env.step(t, arm);

    Vector g = gradient(theta, xs[static_cast<std::size_t>(best)]).values;
    g *= inv_root_m;
    z.rank1_update(g);
    data.push_back({t, xs[static_cast<std::size_t>(best)], arm, out.reward});
    TrainSpec ts = cfg.train;
    ts.lambda = cfg.lambda;
    ts.steps = steps_at(t);
    theta = train_nn(cfg.warm_start ? theta : theta0, theta0, data, ts, train);
    gamma = gamma_t(cfg, t, z.logdet_ratio(), ts.steps);

    cum += out.regret;
    trace.arms.push_back(arm);
    trace.cum_regret.push_back(cum);
  }
  return trace;
}

}  // namespace dbandit::testing

#endif  // DBANDIT_TESTS_REFERENCE_UCB_HPP_
