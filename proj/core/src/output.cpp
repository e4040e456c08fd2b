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

#include "dbandit/output.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "json.hpp"

#include "dbandit/errors.hpp"

namespace dbandit {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string run_csv(const RunResult& run) {
  std::string out = kRunCsvHeader;
  out += '\n';
  for (const auto& r : run.rows) {
    out += std::to_string(r.round);
    out += ',';
    out += std::to_string(r.arm);
    out += ',';
    out += format_double(r.regret);
    out += ',';
    out += format_double(r.cum_regret);
    out += ',';
    out += std::to_string(r.revealed);
    out += ',';
    out += std::to_string(r.pending);
    out += ',';
    out += format_double(r.gamma);
    out += '\n';
  }
  return out;
}

std::string mean_csv(const RegretCurves& curves) {
  std::string out = kMeanCsvHeader;
  out += '\n';
  for (std::size_t t = 0; t < curves.mean.size(); ++t) {
    out += std::to_string(t + 1) + ',' + format_double(curves.mean[t]) + ',' +
           format_double(curves.min[t]) + ',' + format_double(curves.max[t]) + '\n';
  }
  return out;
}

namespace {

json analysis_to_json(const AnalysisResult& a) {
  json curve = json::array();
  for (const auto& p : a.bound_curve) curve.push_back({{"T", p.horizon}, {"bound", p.bound}});
  return {{"contexts", a.contexts},
          {"d_tilde", a.d_tilde},
          {"min_eigenvalue", a.min_eigenvalue},
          {"D_plus", a.delay.d_plus},
          {"D_tau", a.delay.d_tau},
          {"psi_tau", a.delay.psi_tau},
          {"bound_curve", curve}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string analysis_json(const AnalysisResult& analysis) {
  return analysis_to_json(analysis).dump(2) + "\n";
}

std::string summary_json(const ExperimentConfig& cfg, std::span<const RunResult> runs,
                         const std::optional<AnalysisResult>& analysis) {
  json doc;
  doc["config"] = json::parse(config_to_json(cfg));
  json per_seed = json::array();
  double total = 0.0;
  for (const auto& r : runs) {
    json entry = {{"seed", r.seed}, {"final_regret", r.summary.final_regret}};
    if (r.summary.max_scaled_grad_norm)
      entry["max_scaled_grad_norm"] = *r.summary.max_scaled_grad_norm;
    per_seed.push_back(entry);
    total += r.summary.final_regret;
  }
  doc["runs"] = per_seed;
  if (!runs.empty()) doc["mean_final_regret"] = total / static_cast<double>(runs.size());
  if (analysis) doc["analysis"] = analysis_to_json(*analysis);
  return doc.dump(2) + "\n";
}

void emit(const ExperimentConfig& cfg, std::span<const RunResult> runs,
          const std::optional<AnalysisResult>& analysis,
          const std::filesystem::path& dir, bool force) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec))
      throw IoError(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir, ec) && !force)
      throw IoError(dir.string() + " already contains results; pass --force to overwrite");
  } else {
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  for (const auto& r : runs)
    write_file(dir / ("run_" + std::to_string(r.seed) + ".csv"), run_csv(r));
  if (!runs.empty()) write_file(dir / "mean.csv", mean_csv(aggregate(runs)));
  write_file(dir / "summary.json", summary_json(cfg, runs, analysis));
}

}  // namespace dbandit
