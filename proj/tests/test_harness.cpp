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

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

#include "dbandit/config.hpp"
#include "dbandit/errors.hpp"
#include "dbandit/experiment.hpp"
#include "dbandit/output.hpp"
#include "support/oracles.hpp"

namespace dbandit {
namespace {

using nlohmann::json;
using testing::read_text;
using testing::ScratchDir;

std::string problems_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig smoke_config(const std::string& algorithm = "lin-ucb") {
  return parse_config(R"({
    "horizon": 5, "arms": 2, "algorithm": ")" + algorithm + R"(", "seeds": [3],
    "environment": {"synthetic": {"function": "linear", "dim": 4, "seed": 1}},
    "delay": {"distribution": "none"}
  })");
}

std::vector<int> split_lines(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) sizes.push_back(static_cast<int>(line.size()));
  return sizes;
}

TEST(Config, DefaultsMirrorExperimentSetup) {
  const ExperimentConfig cfg = parse_config("{}");
  EXPECT_EQ(cfg.policy.shape.width, 128);
  EXPECT_EQ(cfg.policy.lambda, 1.0);
  EXPECT_EQ(cfg.policy.nu, 1.0);
  EXPECT_EQ(cfg.policy.delta, 0.05);
  EXPECT_EQ(cfg.policy.norm_s, 1e-4);
  EXPECT_EQ(cfg.policy.train.eta, 0.001);
  EXPECT_EQ(std::get<MiniBatch>(cfg.policy.train.batch).batch_size, 64);
  EXPECT_TRUE(std::holds_alternative<RoundSteps>(cfg.policy.step_schedule));
  EXPECT_EQ(cfg.environment.noise_variance, 0.001);
  EXPECT_EQ(cfg.environment.wrong_class_reward, 0.0);
  EXPECT_EQ(cfg.seeds.size(), 5u);
  EXPECT_FALSE(cfg.policy.warm_start);
  EXPECT_EQ(cfg.policy.retrain_trigger, RetrainTrigger::kEveryRound);
}

TEST(Config, ExpectedDelayShorthand) {
  const auto exp = parse_config(R"({"delay": {"distribution": "exponential", "expected": 30}})");
  EXPECT_EQ(describe(exp.delay), "exponential(rate=0.03333333333333333)");
  const auto uni = parse_config(R"({"delay": {"distribution": "uniform", "expected": 30}})");
  EXPECT_EQ(describe(uni.delay), "uniform(0,60)");
  const auto par = parse_config(R"({"delay": {"distribution": "pareto", "expected": 30}})");
  EXPECT_EQ(describe(par.delay), "pareto(a=1.0333333333333334,x_m=1)");
  const json echoed = json::parse(config_to_json(par));
  EXPECT_EQ(echoed["delay"]["resolved"], "pareto(a=1.0333333333333334,x_m=1)");
}

TEST(Config, ExplicitParametersAndComments) {
  const auto cfg = parse_config(R"({
    // comments are allowed
    "algorithm": "delayed-neural-ts",
    "policy": {"width": 16, "depth": 3, "gamma": 0.5, "sqrt_lambda_S": "root",
               "design": "diagonal",
               "train": {"steps": 12, "batch_size": "full", "warm_start": true,
                         "trigger": "on-reveal", "eta": 0.01}},
    "delay": {"distribution": "pareto", "a": 2.5, "x_m": 0.5, "lomax": true}
  })");
  EXPECT_EQ(cfg.algorithm, Algorithm::kDelayedNeuralTs);
  EXPECT_EQ(cfg.policy.shape.depth, 3);
  EXPECT_EQ(std::get<ConstantGamma>(cfg.policy.gamma_mode).value, 0.5);
  EXPECT_FALSE(cfg.policy.sqrt_lambda_times_s);
  EXPECT_EQ(cfg.design, DesignChoice::kDiagonal);
  EXPECT_EQ(std::get<FixedSteps>(cfg.policy.step_schedule).steps, 12);
  EXPECT_TRUE(std::holds_alternative<FullBatch>(cfg.policy.train.batch));
  EXPECT_TRUE(cfg.policy.warm_start);
  EXPECT_EQ(cfg.policy.retrain_trigger, RetrainTrigger::kOnReveal);
  const auto& d = std::get<ParetoDelay>(cfg.delay);
  EXPECT_EQ(d.shape, 2.5);
  EXPECT_EQ(d.scale, 0.5);
  EXPECT_TRUE(d.lomax);
}

TEST(Config, ListsEveryProblem) {
  const std::string msg = problems_of(R"({
    "horizon": 0, "seeds": [],
    "policy": {"width": 7, "bogus": 1},
    "delay": {"distribution": "uniform", "B": -1},
    "environment": {"noise_variance": "loud"}
  })");
  EXPECT_NE(msg.find("policy.bogus: unknown field"), std::string::npos) << msg;
  EXPECT_NE(msg.find("environment.noise_variance: must be a number"), std::string::npos) << msg;
  // Semantic problems are reported alongside structural ones.
  EXPECT_NE(msg.find("horizon: must be >= 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("seeds: must not be empty"), std::string::npos) << msg;

  const std::string semantic = problems_of(R"({
    "horizon": 0, "seeds": [], "policy": {"width": 7},
    "delay": {"distribution": "uniform", "B": -1},
    "environment": {"noise_variance": -1}
  })");
  for (const char* needle : {"horizon", "seeds", "policy", "delay", "noise_variance"})
    EXPECT_NE(semantic.find(needle), std::string::npos) << needle << " in " << semantic;
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_NE(problems_of("{not json"), "");
  EXPECT_NE(problems_of(R"({"algorithm": "greedy"})").find("algorithm"), std::string::npos);
  EXPECT_NE(problems_of(R"({"policy": {"gamma": "huge"}})").find("gamma"), std::string::npos);
  EXPECT_NE(problems_of(R"({"seeds": [1, -2]})").find("seeds"), std::string::npos);
  EXPECT_NE(problems_of(R"({"seeds": [1, 1]})").find("distinct"), std::string::npos);
  EXPECT_NE(problems_of(R"({"policy": {"delta": 1.5}})").find("delta"), std::string::npos);
  EXPECT_NE(problems_of(R"({"environment": {"dataset": {"kind": "mnist", "path": "x"}}})")
                .find("labels"),
            std::string::npos);
  EXPECT_NE(problems_of(R"({"environment": {"synthetic": {"dim": 5}}})").find("even"),
            std::string::npos);
  EXPECT_EQ(problems_of(R"({"algorithm": "lin-ucb",
                            "environment": {"synthetic": {"dim": 5}}})"),
            "");
}

TEST(Config, JsonRoundTrip) {
  const auto cfg = parse_config(R"({
    "horizon": 77, "arms": 3, "algorithm": "neural-ts", "seeds": [4, 9],
    "policy": {"width": 10, "lambda": 2, "gamma": "simple-ucb", "train": {"steps": 3}},
    "environment": {"synthetic": {"function": "cosine-clipped", "dim": 6, "seed": 8},
                    "noise_variance": 0.01},
    "delay": {"distribution": "exponential", "rate": 0.25},
    "analysis": {"enabled": true, "alpha": 1.5, "rounds": 4}
  })");
  const std::string text = config_to_json(cfg);
  EXPECT_EQ(config_to_json(parse_config(text)), text);
}

TEST(Config, DataPathResolution) {
  ::setenv("DELAYED_BANDIT_DATA", "/data/root", 1);
  EXPECT_EQ(resolve_data_path("m.data"), std::filesystem::path("/data/root/m.data"));
  EXPECT_EQ(resolve_data_path("/abs/m.data"), std::filesystem::path("/abs/m.data"));
  ::unsetenv("DELAYED_BANDIT_DATA");
  EXPECT_EQ(resolve_data_path("m.data"), std::filesystem::path("m.data"));
}

TEST(Config, ResolvedPolicy) {
  ExperimentConfig cfg = parse_config(R"({"policy": {"width": 8}})");
  PolicyConfig p = cfg.resolved_policy(6);
  EXPECT_EQ(p.shape.input_dim, 6);
  EXPECT_EQ(p.design_mode, DesignMode::kFull);
  EXPECT_EQ(p.exploration, Exploration::kUcb);
  cfg.policy.shape.width = 128;
  EXPECT_EQ(cfg.resolved_policy(7840).design_mode, DesignMode::kDiagonal);
  cfg.algorithm = Algorithm::kLinTs;
  EXPECT_EQ(cfg.resolved_policy(7840).exploration, Exploration::kThompson);
  EXPECT_TRUE(std::holds_alternative<NoDelay>(cfg.effective_delay()));
}

TEST(Experiment, SmokeRun) {
  const auto cfg = smoke_config();
  const auto runs = run_experiment(cfg);
  ASSERT_EQ(runs.size(), 1u);
  ASSERT_EQ(runs[0].rows.size(), 5u);
  double prev = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& r = runs[0].rows[i];
    EXPECT_EQ(r.round, static_cast<int>(i) + 1);
    EXPECT_TRUE(std::isfinite(r.cum_regret));
    EXPECT_EQ(r.cum_regret, prev + r.regret);
    EXPECT_EQ(r.revealed + r.pending, i + 1);
    prev = r.cum_regret;
  }
}

TEST(Experiment, HugeConstantDelayRevealsNothing) {
  ExperimentConfig cfg = parse_config(R"({
    "horizon": 100, "arms": 2, "algorithm": "delayed-neural-ucb", "seeds": [1],
    "policy": {"width": 8, "train": {"steps": 2}},
    "environment": {"synthetic": {"function": "quadratic-clipped", "dim": 4, "seed": 2}},
    "delay": {"distribution": "constant", "value": 1e6}
  })");
  const EnvironmentSpec env = build_environment(cfg);
  const RunResult run = run_single(cfg, env, 1);
  for (const auto& row : run.rows) {
    EXPECT_EQ(row.revealed, 0u);
    EXPECT_EQ(row.pending, static_cast<std::size_t>(row.round));
    EXPECT_EQ(row.gamma, run.rows.front().gamma);
  }
}

TEST(Experiment, SeedOrderAndParallelismDoNotChangeResults) {
  ExperimentConfig cfg = parse_config(R"({
    "horizon": 40, "arms": 3, "algorithm": "delayed-neural-ts", "seeds": [5, 6, 7],
    "policy": {"width": 8, "train": {"steps": 3}},
    "environment": {"synthetic": {"function": "cosine-clipped", "dim": 4, "seed": 2}},
    "delay": {"distribution": "exponential", "expected": 3}
  })");
  const auto serial = run_experiment(cfg, 1);
  const auto parallel = run_experiment(cfg, 3);
  cfg.seeds = {7, 5, 6};
  const auto reordered = run_experiment(cfg, 2);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(run_csv(serial[i]), run_csv(parallel[i]));
  EXPECT_EQ(run_csv(serial[0]), run_csv(reordered[1]));
  EXPECT_EQ(run_csv(serial[2]), run_csv(reordered[0]));
}

TEST(Experiment, RunsAreReproducible) {
  const auto cfg = smoke_config("delayed-neural-ucb");
  ExperimentConfig neural = cfg;
  neural.policy.shape.width = 8;
  neural.horizon = 30;
  neural.delay = UniformDelay{4.0};
  const auto a = run_experiment(neural);
  const auto b = run_experiment(neural);
  EXPECT_EQ(run_csv(a[0]), run_csv(b[0]));
}

TEST(Experiment, UndelayedBaselinesIgnoreConfiguredDelay) {
  ExperimentConfig cfg = smoke_config("lin-ts");
  cfg.delay = ConstantDelay{1e6};
  const auto runs = run_experiment(cfg);
  EXPECT_EQ(runs[0].rows.back().revealed, 5u);
}

RunResult curve(std::vector<double> cum) {
  RunResult r;
  double prev = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    r.rows.push_back({static_cast<int>(i) + 1, 1, cum[i] - prev, cum[i], i + 1, 0, 1.0});
    prev = cum[i];
  }
  r.summary.final_regret = cum.empty() ? 0.0 : cum.back();
  return r;
}

TEST(Aggregate, Examples) {
  const std::vector<RunResult> same{curve({1, 2, 4}), curve({1, 2, 4})};
  const auto s = aggregate(same);
  EXPECT_EQ(s.mean, (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(s.min, s.max);

  // c and -c + 2*cbar average to cbar.
  const std::vector<double> c{0.5, 1.5, 4.0}, cbar{1.0, 2.0, 3.0};
  std::vector<double> mirror;
  for (std::size_t i = 0; i < c.size(); ++i) mirror.push_back(-c[i] + 2 * cbar[i]);
  const std::vector<RunResult> pair{curve(c), curve(mirror)};
  const auto m = aggregate(pair);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(m.mean[i], cbar[i], 1e-15);
  EXPECT_EQ(m.min[2], 2.0);
  EXPECT_EQ(m.max[2], 4.0);

  EXPECT_THROW(aggregate(std::vector<RunResult>{}), ArgumentError);
  const std::vector<RunResult> ragged{curve({1, 2}), curve({1, 2, 3})};
  EXPECT_THROW(aggregate(ragged), ArgumentError);
}

TEST(Output, FormatDoubleRoundTrips) {
  for (double v : {0.0, 0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
    const std::string s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(Output, EmitWritesFilesAndRefusesOverwrite) {
  ScratchDir scratch("emit");
  const auto cfg = smoke_config();
  const auto runs = run_experiment(cfg);
  const auto out = scratch / "results";
  emit(cfg, runs, std::nullopt, out, false);

  const std::string run = read_text(out / "run_3.csv");
  EXPECT_EQ(split_lines(run).size(), 6u);
  EXPECT_EQ(run.substr(0, run.find('\n')), "round,arm,regret,cum_regret,revealed,pending,gamma");
  EXPECT_EQ(run.find('\r'), std::string::npos);
  EXPECT_EQ(run.back(), '\n');
  const std::string mean = read_text(out / "mean.csv");
  EXPECT_EQ(mean.substr(0, mean.find('\n')), kMeanCsvHeader);
  EXPECT_EQ(split_lines(mean).size(), 6u);

  const json summary = json::parse(read_text(out / "summary.json"));
  EXPECT_EQ(summary["runs"][0]["seed"], 3);
  EXPECT_EQ(summary["runs"][0]["final_regret"].get<double>(), runs[0].summary.final_regret);
  EXPECT_EQ(summary["config"]["horizon"], 5);

  EXPECT_THROW(emit(cfg, runs, std::nullopt, out, false), IoError);
  EXPECT_NO_THROW(emit(cfg, runs, std::nullopt, out, true));
}

TEST(Output, SummaryCarriesAnalysis) {
  ExperimentConfig cfg = parse_config(R"({
    "horizon": 50, "arms": 2, "algorithm": "delayed-neural-ucb", "seeds": [1],
    "policy": {"width": 8},
    "environment": {"synthetic": {"function": "linear", "dim": 4, "seed": 2}},
    "delay": {"distribution": "uniform", "expected": 5},
    "analysis": {"enabled": true, "rounds": 5, "alpha": 10, "curve_points": 4}
  })");
  const auto env = build_environment(cfg);
  const AnalysisResult a = analyze(cfg, env);
  EXPECT_EQ(a.contexts, 10u);
  EXPECT_GT(a.d_tilde, 0.0);
  ASSERT_EQ(a.bound_curve.size(), 4u);
  EXPECT_EQ(a.bound_curve.back().horizon, 50);
  for (std::size_t i = 1; i < a.bound_curve.size(); ++i)
    EXPECT_GE(a.bound_curve[i].bound, a.bound_curve[i - 1].bound);
  EXPECT_NEAR(a.delay.d_plus,
              d_plus({50.0, 0.05, 5.0, 10.0, 0.0}).d_plus, 1e-12);
  const json doc = json::parse(summary_json(cfg, {}, a));
  for (const char* key : {"d_tilde", "D_plus", "bound_curve"})
    EXPECT_TRUE(doc["analysis"].contains(key)) << key;
}

}  // namespace
}  // namespace dbandit
