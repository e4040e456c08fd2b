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

#ifndef DBANDIT_OUTPUT_HPP_
#define DBANDIT_OUTPUT_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "dbandit/config.hpp"
#include "dbandit/experiment.hpp"

namespace dbandit {

inline constexpr const char* kRunCsvHeader =
    "round,arm,regret,cum_regret,revealed,pending,gamma";
inline constexpr const char* kMeanCsvHeader = "round,mean_cum_regret,min_cum_regret,max_cum_regret";

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

std::string run_csv(const RunResult& run);
std::string mean_csv(const RegretCurves& curves);
std::string summary_json(const ExperimentConfig& cfg, std::span<const RunResult> runs,
                         const std::optional<AnalysisResult>& analysis);
std::string analysis_json(const AnalysisResult& analysis);

// Writes run_<seed>.csv per seed, mean.csv and summary.json into `dir`.
// Refuses a non-empty existing directory unless `force` is set.
void emit(const ExperimentConfig& cfg, std::span<const RunResult> runs,
          const std::optional<AnalysisResult>& analysis,
          const std::filesystem::path& dir, bool force);

}  // namespace dbandit

#endif  // DBANDIT_OUTPUT_HPP_
