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

// dbandit: run, analyze and validate delayed contextual-bandit experiments.
//
//   dbandit run --config exp.json [--seeds 1,2,3] [--out dir] [--force] [--jobs N]
//   dbandit analyze --config exp.json
//   dbandit validate --config exp.json
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 runtime failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dbandit/config.hpp"
#include "dbandit/errors.hpp"
#include "dbandit/experiment.hpp"
#include "dbandit/output.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.front() == '-')
      throw dbandit::ConfigError("--seeds: '" + tok + "' is not a nonnegative integer");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw dbandit::ConfigError("--seeds: no seeds given");
  return seeds;
}

int cmd_validate(const std::string& config_path) {
  const auto cfg = dbandit::load_config(config_path);
  std::cout << dbandit::config_to_json(cfg) << "\n";
  std::cerr << "config OK\n";
  return kOk;
}

int cmd_analyze(const std::string& config_path) {
  const auto cfg = dbandit::load_config(config_path);
  const auto env = dbandit::build_environment(cfg);
  std::cout << dbandit::analysis_json(dbandit::analyze(cfg, env));
  return kOk;
}

int cmd_run(const std::string& config_path, const std::string& seeds,
            const std::string& out, bool force, int jobs) {
  auto cfg = dbandit::load_config(config_path);
  if (!seeds.empty()) cfg.seeds = parse_seed_list(seeds);
  if (!out.empty()) cfg.output_dir = out;
  cfg.validate();

  const auto runs = dbandit::run_experiment(cfg, jobs);
  std::optional<dbandit::AnalysisResult> analysis;
  if (cfg.analysis.enabled) analysis = dbandit::analyze(cfg, dbandit::build_environment(cfg));
  dbandit::emit(cfg, runs, analysis, cfg.output_dir, force);

  for (const auto& r : runs)
    std::cerr << "seed " << r.seed << ": final regret "
              << dbandit::format_double(r.summary.final_regret) << " ("
              << r.summary.wall_seconds << " s)\n";
  std::cerr << "wrote " << cfg.output_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural contextual bandits under delayed reward feedback"};
  app.require_subcommand(1);

  std::string config_path;
  std::string seeds;
  std::string out;
  bool force = false;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run every seed of an experiment and write CSV/JSON");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--seeds", seeds, "Comma-separated seeds overriding the config");
  run->add_option("--out", out, "Output directory overriding the config");
  run->add_flag("--force", force, "Overwrite an existing output directory");
  run->add_option("--jobs", jobs, "Replicates run in parallel")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "NTK effective dimension, D_+ and regret bound");
  analyze->add_option("--config", config_path, "Experiment config (JSON)")->required();

  auto* validate = app.add_subcommand("validate", "Check a config and print it resolved");
  validate->add_option("--config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) return cmd_run(config_path, seeds, out, force, jobs);
    if (*analyze) return cmd_analyze(config_path);
    if (*validate) return cmd_validate(config_path);
  } catch (const dbandit::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kInvalid;
}
