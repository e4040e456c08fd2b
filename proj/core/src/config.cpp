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

#include "dbandit/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "dbandit/errors.hpp"

namespace dbandit {

using nlohmann::json;

namespace {

constexpr std::pair<Algorithm, std::string_view> kAlgorithms[] = {
    {Algorithm::kDelayedNeuralUcb, "delayed-neural-ucb"},
    {Algorithm::kDelayedNeuralTs, "delayed-neural-ts"},
    {Algorithm::kNeuralUcb, "neural-ucb"},
    {Algorithm::kNeuralTs, "neural-ts"},
    {Algorithm::kLinUcb, "lin-ucb"},
    {Algorithm::kLinTs, "lin-ts"},
};

// Reads typed fields out of one JSON object, collecting every problem rather
// than stopping at the first.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) error("", "must be an object");
  }

  bool has(const std::string& key) {
    if (!obj_.is_object() || !obj_.contains(key)) return false;
    seen_.insert(key);
    return true;
  }

  const json& at(const std::string& key) { return obj_.at(key); }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    if (!obj_[key].is_number()) return error(key, "must be a number");
    out = obj_[key].get<double>();
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (!has(key)) return;
    if (!obj_[key].is_number_integer()) return error(key, "must be an integer");
    out = obj_[key].get<Int>();
  }

  void boolean(const std::string& key, bool& out) {
    if (!has(key)) return;
    if (!obj_[key].is_boolean()) return error(key, "must be true or false");
    out = obj_[key].get<bool>();
  }

  void string(const std::string& key, std::string& out) {
    if (!has(key)) return;
    if (!obj_[key].is_string()) return error(key, "must be a string");
    out = obj_[key].get<std::string>();
  }

  void error(const std::string& key, const std::string& msg) {
    errors_.push_back(field(key) + ": " + msg);
  }

  std::string field(const std::string& key) const {
    if (path_.empty()) return key;
    return key.empty() ? path_ : path_ + "." + key;
  }

  void finish() {
    if (!obj_.is_object()) return;
    for (const auto& [key, _] : obj_.items())
      if (!seen_.contains(key)) error(key, "unknown field");
  }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

template <class Fn>
void guarded(std::vector<std::string>& errors, const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    errors.push_back(field + ": " + e.what());
  }
}

void parse_train(ObjectReader& r, ExperimentConfig& cfg) {
  auto& train = cfg.policy.train;
  r.number("eta", train.eta);
  if (r.has("steps")) {
    const json& v = r.at("steps");
    if (v.is_string() && v.get<std::string>() == "round") {
      cfg.policy.step_schedule = RoundSteps{};
    } else if (v.is_number_integer()) {
      cfg.policy.step_schedule = FixedSteps{v.get<int>()};
    } else {
      r.error("steps", "must be an integer or \"round\"");
    }
  }
  if (r.has("batch_size")) {
    const json& v = r.at("batch_size");
    if (v.is_string() && v.get<std::string>() == "full") {
      train.batch = FullBatch{};
    } else if (v.is_number_integer()) {
      train.batch = MiniBatch{v.get<int>()};
    } else {
      r.error("batch_size", "must be an integer or \"full\"");
    }
  }
  r.boolean("warm_start", cfg.policy.warm_start);
  std::string trigger;
  r.string("trigger", trigger);
  if (trigger == "every-round") {
    cfg.policy.retrain_trigger = RetrainTrigger::kEveryRound;
  } else if (trigger == "on-reveal") {
    cfg.policy.retrain_trigger = RetrainTrigger::kOnReveal;
  } else if (!trigger.empty()) {
    r.error("trigger", "must be every-round or on-reveal");
  }
  r.finish();
}

void parse_policy(ObjectReader& r, ExperimentConfig& cfg, std::vector<std::string>& errors) {
  auto& p = cfg.policy;
  r.integer("depth", p.shape.depth);
  r.integer("width", p.shape.width);
  r.number("lambda", p.lambda);
  r.number("nu", p.nu);
  r.number("delta", p.delta);
  r.number("S", p.norm_s);
  r.number("C1", p.c1);
  r.number("C2", p.c2);
  r.number("C3", p.c3);
  r.number("lin_alpha", p.lin_alpha);
  if (r.has("gamma")) {
    const json& v = r.at("gamma");
    if (v.is_number()) {
      p.gamma_mode = ConstantGamma{v.get<double>()};
    } else if (v.is_string() && v.get<std::string>() == "theoretical") {
      p.gamma_mode = TheoreticalGamma{};
    } else if (v.is_string() && v.get<std::string>() == "simple-ucb") {
      p.gamma_mode = SimpleUcbGamma{};
    } else {
      r.error("gamma", "must be \"theoretical\", \"simple-ucb\" or a number");
    }
  }
  std::string offset;
  r.string("sqrt_lambda_S", offset);
  if (offset == "product") {
    p.sqrt_lambda_times_s = true;
  } else if (offset == "root") {
    p.sqrt_lambda_times_s = false;
  } else if (!offset.empty()) {
    r.error("sqrt_lambda_S", "must be product or root");
  }
  std::string design;
  r.string("design", design);
  if (design == "auto") {
    cfg.design = DesignChoice::kAuto;
  } else if (design == "full") {
    cfg.design = DesignChoice::kFull;
  } else if (design == "diagonal") {
    cfg.design = DesignChoice::kDiagonal;
  } else if (!design.empty()) {
    r.error("design", "must be auto, full or diagonal");
  }
  if (r.has("train")) {
    ObjectReader tr(r.at("train"), r.field("train"), errors);
    parse_train(tr, cfg);
  }
  r.finish();
}

void parse_environment(ObjectReader& r, ExperimentConfig& cfg,
                       std::vector<std::string>& errors) {
  auto& env = cfg.environment;
  if (r.has("dataset")) {
    ObjectReader dr(r.at("dataset"), r.field("dataset"), errors);
    DatasetRef ref;
    dr.string("kind", ref.kind);
    dr.string("path", ref.path);
    dr.string("images", ref.path);
    dr.string("labels", ref.labels_path);
    dr.integer("max_samples", ref.max_samples);
    dr.finish();
    env.dataset = ref;
  }
  if (r.has("synthetic")) {
    ObjectReader sr(r.at("synthetic"), r.field("synthetic"), errors);
    std::string fn = std::string(to_string(env.synthetic.kind));
    sr.string("function", fn);
    guarded(errors, sr.field("function"),
            [&] { env.synthetic.kind = parse_synthetic_kind(fn); });
    sr.integer("dim", env.synthetic.dim);
    sr.integer("seed", env.synthetic.function_seed);
    sr.finish();
  }
  r.number("noise_variance", env.noise_variance);
  r.boolean("mirror_contexts", env.mirror_contexts);
  r.number("wrong_class_reward", env.wrong_class_reward);
  r.finish();
}

void parse_delay(ObjectReader& r, ExperimentConfig& cfg, std::vector<std::string>& errors) {
  std::string kind = "none";
  r.string("distribution", kind);
  r.has("resolved");  // echoed by config_to_json; informational only
  r.has("mean");
  bool lomax = false;
  r.boolean("lomax", lomax);
  if (r.has("expected")) {
    double mean = 0.0;
    r.number("expected", mean);
    guarded(errors, r.field("expected"),
            [&] { cfg.delay = delay_from_expected(kind, mean, lomax); });
    r.finish();
    return;
  }
  if (kind == "none") {
    cfg.delay = NoDelay{};
  } else if (kind == "constant") {
    ConstantDelay d;
    r.number("value", d.value);
    cfg.delay = d;
  } else if (kind == "uniform") {
    UniformDelay d;
    r.number("B", d.bound);
    cfg.delay = d;
  } else if (kind == "exponential") {
    ExponentialDelay d;
    r.number("rate", d.rate);
    cfg.delay = d;
  } else if (kind == "pareto") {
    ParetoDelay d;
    d.lomax = lomax;
    r.number("a", d.shape);
    r.number("x_m", d.scale);
    cfg.delay = d;
  } else {
    r.error("distribution", "unknown delay distribution '" + kind + "'");
  }
  r.finish();
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  for (const auto& [a, name] : kAlgorithms)
    if (a == algo) return name;
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgorithms)
    if (n == name) return a;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

bool is_neural(Algorithm algo) {
  return algo != Algorithm::kLinUcb && algo != Algorithm::kLinTs;
}

bool uses_delay(Algorithm algo) {
  return algo == Algorithm::kDelayedNeuralUcb || algo == Algorithm::kDelayedNeuralTs;
}

Exploration exploration_of(Algorithm algo) {
  switch (algo) {
    case Algorithm::kDelayedNeuralTs:
    case Algorithm::kNeuralTs:
    case Algorithm::kLinTs:
      return Exploration::kThompson;
    default:
      return Exploration::kUcb;
  }
}

std::vector<std::string> ExperimentConfig::problems() const {
  std::vector<std::string> errs;
  if (horizon < 1) errs.push_back("horizon: must be >= 1");
  if (arms < 1) errs.push_back("arms: must be >= 1");
  if (seeds.empty()) errs.push_back("seeds: must not be empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    errs.push_back("seeds: must be distinct");
  PolicyConfig p = policy;
  p.shape.input_dim = 2;  // checked against the environment once it is known
  guarded(errs, "policy", [&] { p.validate(); });
  guarded(errs, "delay", [&] { dbandit::validate(delay); });
  const auto& env = environment;
  if (!(env.noise_variance >= 0.0) || !std::isfinite(env.noise_variance))
    errs.push_back("environment.noise_variance: must be finite and >= 0");
  if (env.dataset) {
    if (env.dataset->kind != "mushroom" && env.dataset->kind != "mnist")
      errs.push_back("environment.dataset.kind: must be mushroom or mnist");
    if (env.dataset->path.empty())
      errs.push_back("environment.dataset.path: required");
    if (env.dataset->kind == "mnist" && env.dataset->labels_path.empty())
      errs.push_back("environment.dataset.labels: required for mnist");
    if (arms < 2) errs.push_back("arms: dataset environments need K >= 2");
  } else if (env.synthetic.dim < 1) {
    errs.push_back("environment.synthetic.dim: must be >= 1");
  } else if (is_neural(algorithm) && !env.mirror_contexts && env.synthetic.dim % 2 != 0) {
    errs.push_back("environment.synthetic.dim: neural policies need an even context "
                   "dimension (or mirror_contexts)");
  }
  if (analysis.rounds < 1) errs.push_back("analysis.rounds: must be >= 1");
  if (analysis.curve_points < 1) errs.push_back("analysis.curve_points: must be >= 1");
  if (analysis.alpha < 0.0 || analysis.b < 0.0 || analysis.c4 < 0.0)
    errs.push_back("analysis: alpha, b, C4 must be >= 0");
  return errs;
}

void ExperimentConfig::validate() const {
  const auto errs = problems();
  if (errs.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw ConfigError(msg);
}

PolicyConfig ExperimentConfig::resolved_policy(int context_dim) const {
  PolicyConfig p = policy;
  p.shape.input_dim = context_dim;
  p.exploration = exploration_of(algorithm);
  switch (design) {
    case DesignChoice::kFull: p.design_mode = DesignMode::kFull; break;
    case DesignChoice::kDiagonal: p.design_mode = DesignMode::kDiagonal; break;
    case DesignChoice::kAuto: {
      const std::size_t dim = is_neural(algorithm) ? p.shape.param_count()
                                                   : static_cast<std::size_t>(context_dim);
      p.design_mode = dim <= kAutoFullDesignLimit ? DesignMode::kFull : DesignMode::kDiagonal;
      break;
    }
  }
  return p;
}

DelayDistribution ExperimentConfig::effective_delay() const {
  return uses_delay(algorithm) ? delay : DelayDistribution{NoDelay{}};
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  std::vector<std::string> errors;
  ObjectReader root(doc, "", errors);
  root.integer("horizon", cfg.horizon);
  root.integer("arms", cfg.arms);
  std::string algo(to_string(cfg.algorithm));
  root.string("algorithm", algo);
  guarded(errors, "algorithm", [&] { cfg.algorithm = parse_algorithm(algo); });
  if (root.has("seeds")) {
    const json& s = root.at("seeds");
    cfg.seeds.clear();
    if (!s.is_array()) {
      errors.push_back("seeds: must be an array of nonnegative integers");
    } else {
      for (const auto& v : s) {
        if (!v.is_number_unsigned()) {
          errors.push_back("seeds: must be an array of nonnegative integers");
          break;
        }
        cfg.seeds.push_back(v.get<std::uint64_t>());
      }
    }
  }
  root.string("output_dir", cfg.output_dir);
  if (root.has("policy")) {
    ObjectReader r(root.at("policy"), "policy", errors);
    parse_policy(r, cfg, errors);
  }
  if (root.has("environment")) {
    ObjectReader r(root.at("environment"), "environment", errors);
    parse_environment(r, cfg, errors);
  }
  if (root.has("delay")) {
    ObjectReader r(root.at("delay"), "delay", errors);
    parse_delay(r, cfg, errors);
  }
  if (root.has("analysis")) {
    ObjectReader r(root.at("analysis"), "analysis", errors);
    r.boolean("enabled", cfg.analysis.enabled);
    r.integer("rounds", cfg.analysis.rounds);
    r.number("alpha", cfg.analysis.alpha);
    r.number("b", cfg.analysis.b);
    r.number("C4", cfg.analysis.c4);
    r.integer("curve_points", cfg.analysis.curve_points);
    r.finish();
  }
  root.finish();

  // Semantic checks run on the partially parsed config too; a field that
  // already failed to parse is reported once.
  auto field_of = [](const std::string& e) { return e.substr(0, e.find(':')); };
  std::set<std::string> failed;
  for (const auto& e : errors) failed.insert(field_of(e));
  for (auto& e : cfg.problems())
    if (!failed.contains(field_of(e))) errors.push_back(std::move(e));
  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

json delay_json(const DelayDistribution& d) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, NoDelay>) {
          j["distribution"] = "none";
        } else if constexpr (std::is_same_v<T, ConstantDelay>) {
          j["distribution"] = "constant";
          j["value"] = v.value;
        } else if constexpr (std::is_same_v<T, UniformDelay>) {
          j["distribution"] = "uniform";
          j["B"] = v.bound;
        } else if constexpr (std::is_same_v<T, ExponentialDelay>) {
          j["distribution"] = "exponential";
          j["rate"] = v.rate;
        } else {
          j["distribution"] = "pareto";
          j["a"] = v.shape;
          j["x_m"] = v.scale;
          j["lomax"] = v.lomax;
        }
      },
      d);
  j["resolved"] = describe(d);
  j["mean"] = mean_delay(d);
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg, int indent) {
  const auto& p = cfg.policy;
  json policy = {
      {"depth", p.shape.depth},
      {"width", p.shape.width},
      {"lambda", p.lambda},
      {"nu", p.nu},
      {"delta", p.delta},
      {"S", p.norm_s},
      {"C1", p.c1},
      {"C2", p.c2},
      {"C3", p.c3},
      {"lin_alpha", p.lin_alpha},
      {"sqrt_lambda_S", p.sqrt_lambda_times_s ? "product" : "root"},
      {"design", cfg.design == DesignChoice::kAuto   ? "auto"
                 : cfg.design == DesignChoice::kFull ? "full"
                                                     : "diagonal"},
  };
  if (const auto* c = std::get_if<ConstantGamma>(&p.gamma_mode)) {
    policy["gamma"] = c->value;
  } else {
    policy["gamma"] = std::holds_alternative<TheoreticalGamma>(p.gamma_mode)
                          ? "theoretical"
                          : "simple-ucb";
  }
  json train = {{"eta", p.train.eta},
                {"warm_start", p.warm_start},
                {"trigger", p.retrain_trigger == RetrainTrigger::kEveryRound
                                ? "every-round"
                                : "on-reveal"}};
  if (const auto* f = std::get_if<FixedSteps>(&p.step_schedule)) {
    train["steps"] = f->steps;
  } else {
    train["steps"] = "round";
  }
  if (const auto* mb = std::get_if<MiniBatch>(&p.train.batch)) {
    train["batch_size"] = mb->batch_size;
  } else {
    train["batch_size"] = "full";
  }
  policy["train"] = train;

  const auto& env = cfg.environment;
  json environment = {{"noise_variance", env.noise_variance},
                      {"mirror_contexts", env.mirror_contexts},
                      {"wrong_class_reward", env.wrong_class_reward}};
  if (env.dataset) {
    json ds = {{"kind", env.dataset->kind}, {"path", env.dataset->path}};
    if (!env.dataset->labels_path.empty()) ds["labels"] = env.dataset->labels_path;
    if (env.dataset->max_samples) ds["max_samples"] = env.dataset->max_samples;
    environment["dataset"] = ds;
  } else {
    environment["synthetic"] = {{"function", to_string(env.synthetic.kind)},
                                {"dim", env.synthetic.dim},
                                {"seed", env.synthetic.function_seed}};
  }

  json doc = {
      {"horizon", cfg.horizon},
      {"arms", cfg.arms},
      {"algorithm", to_string(cfg.algorithm)},
      {"seeds", cfg.seeds},
      {"output_dir", cfg.output_dir},
      {"policy", policy},
      {"environment", environment},
      {"delay", delay_json(cfg.delay)},
      {"analysis",
       {{"enabled", cfg.analysis.enabled},
        {"rounds", cfg.analysis.rounds},
        {"alpha", cfg.analysis.alpha},
        {"b", cfg.analysis.b},
        {"C4", cfg.analysis.c4},
        {"curve_points", cfg.analysis.curve_points}}},
  };
  return doc.dump(indent);
}

std::filesystem::path resolve_data_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("DELAYED_BANDIT_DATA"); root && *root)
    return std::filesystem::path(root) / p;
  return p;
}

}  // namespace dbandit
