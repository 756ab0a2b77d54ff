#pragma once

// Experiment configuration: one JSON document describing the reward model,
// fidelity per arm, environment, policy and outputs.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fidbandit/core.hpp"
#include "fidbandit/environments.hpp"
#include "fidbandit/policy.hpp"

namespace fidbandit {

using json = nlohmann::json;

/// A malformed or inconsistent configuration; the message names the field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class EnvironmentKind { Stochastic, AdversarialCsv, LowerBoundPair, IidAsAdversarial, Matrix };

inline std::string to_string(EnvironmentKind k) {
  switch (k) {
    case EnvironmentKind::Stochastic: return "stochastic";
    case EnvironmentKind::AdversarialCsv: return "adversarial_csv";
    case EnvironmentKind::LowerBoundPair: return "lower_bound_pair";
    case EnvironmentKind::IidAsAdversarial: return "iid_as_adversarial";
    case EnvironmentKind::Matrix: return "matrix";
  }
  return "?";
}

struct EnvironmentConfig {
  EnvironmentKind kind = EnvironmentKind::Stochastic;
  std::vector<double> means;                     // stochastic, iid_as_adversarial
  Distribution distribution = Distribution::Bernoulli;
  std::string path;                              // adversarial_csv (resolved)
  std::optional<AdversarialInstance> matrix;     // adversarial_csv, matrix
  double delta = 1.0;                            // lower_bound_pair
  LowerBoundCase which = LowerBoundCase::I;      // lower_bound_pair
};

enum class RegretKind { Weak, Mean, Strong };

inline std::string to_string(RegretKind k) {
  return k == RegretKind::Weak ? "weak" : k == RegretKind::Mean ? "mean" : "strong";
}

struct OutputConfig {
  std::string dir;  // empty: nothing written
  bool runs = true;
  bool summary = true;
  bool curve = true;
};

struct ExperimentConfig {
  RewardModel model = RewardModel::LoyaltyPoints;
  std::size_t horizon = 0;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  SpecList specs;
  EnvironmentConfig environment;
  std::string policy;
  PolicyOverrides overrides;
  std::vector<RegretKind> regret;
  OutputConfig outputs;

  std::size_t arms() const { return specs.size(); }
  bool stochastic() const { return environment.kind == EnvironmentKind::Stochastic; }
};

namespace detail {

template <class T>
T get_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + key, e.what());
  }
}

template <class T>
std::optional<T> opt_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_field<T>(j, key, path);
}

inline std::vector<double> shaped_values(const json& j, std::size_t horizon, const std::string& path) {
  const auto shape = get_field<std::string>(j, "shape", path);
  const double scale = opt_field<double>(j, "scale", path).value_or(1.0);
  const double T = static_cast<double>(horizon);
  std::vector<double> v(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) {
    const double x = static_cast<double>(n);
    double f;
    if (shape == "linear_up") f = std::min(x / T, 1.0);
    else if (shape == "linear_down") f = std::max(0.0, 1.0 - x / T);
    else if (shape == "geometric") f = std::pow(get_field<double>(j, "ratio", path), x);
    else if (shape == "constant") f = 1.0;
    else throw ConfigError(path + "shape", "unknown shape '" + shape + "' (linear_up, linear_down, geometric, constant)");
    v[n - 1] = scale * f;
  }
  return v;
}

inline FidelitySpec parse_fidelity(const json& j, std::size_t horizon, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.substr(0, path.size() - 1), "expected an object");
  const auto family_name = get_field<std::string>(j, "family", path);
  Indexing indexing = Indexing::CurrentCount;
  if (auto s = opt_field<std::string>(j, "indexing", path)) {
    try {
      indexing = parse_indexing(*s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + "indexing", e.what());
    }
  }
  try {
    if (family_name == "zero") return FidelitySpec::zero(horizon, indexing);
    const Family family = parse_family(family_name);
    if (family == Family::Coupon)
      return FidelitySpec::coupon(horizon, get_field<std::size_t>(j, "rho", path), get_field<double>(j, "r", path), indexing);
    if (family == Family::Step) return FidelitySpec::step(horizon, get_field<std::size_t>(j, "m", path), indexing);
    std::vector<double> values = j.contains("values") ? get_field<std::vector<double>>(j, "values", path)
                                                      : shaped_values(j, horizon, path);
    return FidelitySpec::tabular(horizon, std::move(values), family, indexing);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path.substr(0, path.size() - 1), e.what());
  }
}

inline EnvironmentConfig parse_environment(const json& j, const std::filesystem::path& base_dir) {
  const std::string p = "environment.";
  if (!j.is_object()) throw ConfigError("environment", "expected an object");
  EnvironmentConfig env;
  const auto kind = get_field<std::string>(j, "kind", p);
  auto means = [&] {
    auto mu = get_field<std::vector<double>>(j, "means", p);
    if (mu.empty()) throw ConfigError(p + "means", "needs at least one arm");
    for (double m : mu)
      if (!(m >= 0.0 && m <= 1.0)) throw ConfigError(p + "means", "means must lie in [0,1]");
    return mu;
  };
  auto distribution = [&] {
    try {
      return parse_distribution(opt_field<std::string>(j, "distribution", p).value_or("bernoulli"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p + "distribution", e.what());
    }
  };
  if (kind == "stochastic" || kind == "iid_as_adversarial") {
    env.kind = kind == "stochastic" ? EnvironmentKind::Stochastic : EnvironmentKind::IidAsAdversarial;
    env.means = means();
    env.distribution = distribution();
  } else if (kind == "adversarial_csv") {
    env.kind = EnvironmentKind::AdversarialCsv;
    std::filesystem::path path = get_field<std::string>(j, "path", p);
    if (path.is_relative()) path = base_dir / path;
    env.path = path.string();
    try {
      env.matrix = load_matrix_csv(env.path);
    } catch (const std::exception& e) {
      throw ConfigError(p + "path", e.what());
    }
  } else if (kind == "matrix") {
    env.kind = EnvironmentKind::Matrix;
    try {
      env.matrix = AdversarialInstance::from_rows(get_field<std::vector<std::vector<double>>>(j, "rows", p));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(p + "rows", e.what());
    }
  } else if (kind == "lower_bound_pair") {
    env.kind = EnvironmentKind::LowerBoundPair;
    env.delta = opt_field<double>(j, "delta", p).value_or(1.0);
    if (!(env.delta >= 0.0 && env.delta <= 1.0)) throw ConfigError(p + "delta", "must lie in [0,1]");
    const auto which = opt_field<std::string>(j, "case", p).value_or("I");
    if (which == "I") env.which = LowerBoundCase::I;
    else if (which == "II") env.which = LowerBoundCase::II;
    else throw ConfigError(p + "case", "expected \"I\" or \"II\"");
  } else {
    throw ConfigError(p + "kind", "unknown environment kind '" + kind +
                                      "' (stochastic, adversarial_csv, matrix, lower_bound_pair, iid_as_adversarial)");
  }
  return env;
}

inline std::size_t environment_arms(const EnvironmentConfig& env) {
  switch (env.kind) {
    case EnvironmentKind::Stochastic:
    case EnvironmentKind::IidAsAdversarial: return env.means.size();
    case EnvironmentKind::LowerBoundPair: return 2;
    default: return env.matrix->arms();
  }
}

}  // namespace detail

/// Parses a configuration document; relative paths resolve against base_dir.
inline ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir = ".") {
  using detail::get_field;
  using detail::opt_field;
  if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
  ExperimentConfig c;
  try {
    c.model = parse_model(get_field<std::string>(j, "model", ""));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model", e.what());
  }
  c.horizon = get_field<std::size_t>(j, "T", "");
  c.reps = opt_field<std::size_t>(j, "reps", "").value_or(1);
  c.seed = opt_field<std::uint64_t>(j, "seed", "").value_or(0);
  c.threads = opt_field<std::size_t>(j, "threads", "").value_or(1);
  if (c.horizon == 0) throw ConfigError("T", "must be positive");
  if (c.reps == 0) throw ConfigError("reps", "must be at least 1");
  if (c.threads == 0) throw ConfigError("threads", "must be at least 1");

  if (!j.contains("environment")) throw ConfigError("environment", "missing");
  c.environment = detail::parse_environment(j.at("environment"), base_dir);
  const std::size_t arms = detail::environment_arms(c.environment);
  if (c.environment.matrix && c.environment.matrix->rounds() != c.horizon)
    throw ConfigError("environment", "reward matrix has " + std::to_string(c.environment.matrix->rounds()) +
                                         " rows but T = " + std::to_string(c.horizon));
  if (c.environment.kind == EnvironmentKind::LowerBoundPair && c.horizon % 2 != 0)
    throw ConfigError("T", "lower_bound_pair needs an even horizon");
  if (c.horizon < arms) throw ConfigError("T", "must be at least the number of arms K = " + std::to_string(arms));

  if (!j.contains("fidelity")) {
    c.specs.assign(arms, FidelitySpec::zero(c.horizon));
  } else if (const auto& f = j.at("fidelity"); f.is_object()) {
    c.specs.assign(arms, detail::parse_fidelity(f, c.horizon, "fidelity."));
  } else if (f.is_array()) {
    if (f.size() == 1) {
      c.specs.assign(arms, detail::parse_fidelity(f[0], c.horizon, "fidelity[0]."));
    } else {
      if (f.size() != arms)
        throw ConfigError("fidelity", "has " + std::to_string(f.size()) + " entries for K = " + std::to_string(arms) + " arms");
      for (std::size_t a = 0; a < arms; ++a)
        c.specs.push_back(detail::parse_fidelity(f[a], c.horizon, "fidelity[" + std::to_string(a) + "]."));
    }
  } else {
    throw ConfigError("fidelity", "expected an object or an array of objects");
  }

  if (!j.contains("policy")) throw ConfigError("policy", "missing");
  const auto& pol = j.at("policy");
  if (pol.is_string()) {
    c.policy = pol.get<std::string>();
  } else if (pol.is_object()) {
    c.policy = get_field<std::string>(pol, "name", "policy.");
    if (pol.contains("overrides")) {
      const auto& o = pol.at("overrides");
      const std::string p = "policy.overrides.";
      if (!o.is_object()) throw ConfigError("policy.overrides", "expected an object");
      for (const auto& [key, value] : o.items())
        if (key != "eta" && key != "epsilon" && key != "lambda" && key != "t0" && key != "batch" && key != "strict")
          throw ConfigError(p + key, "unknown override (eta, epsilon, lambda, t0, batch, strict)");
      c.overrides.eta = opt_field<double>(o, "eta", p);
      c.overrides.epsilon = opt_field<double>(o, "epsilon", p);
      c.overrides.lambda = opt_field<double>(o, "lambda", p);
      c.overrides.t0 = opt_field<std::size_t>(o, "t0", p);
      c.overrides.batch = opt_field<std::size_t>(o, "batch", p);
      c.overrides.strict = opt_field<bool>(o, "strict", p).value_or(true);
    }
  } else {
    throw ConfigError("policy", "expected a tag string or {name, overrides}");
  }

  if (j.contains("regret")) {
    for (const auto& name : get_field<std::vector<std::string>>(j, "regret", "")) {
      if (name == "weak") c.regret.push_back(RegretKind::Weak);
      else if (name == "strong") c.regret.push_back(RegretKind::Strong);
      else if (name == "mean") {
        if (c.model == RewardModel::Subscription)
          throw ConfigError("regret", "mean regret is not defined for the subscription model");
        c.regret.push_back(RegretKind::Mean);
      } else {
        throw ConfigError("regret", "unknown regret kind '" + name + "' (weak, mean, strong)");
      }
    }
  } else if (c.model == RewardModel::Subscription) {
    c.regret = {RegretKind::Weak, RegretKind::Strong};
  } else {
    c.regret = {RegretKind::Weak, RegretKind::Mean, RegretKind::Strong};
  }

  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    const std::string p = "outputs.";
    if (!o.is_object()) throw ConfigError("outputs", "expected an object");
    if (auto d = opt_field<std::string>(o, "dir", p)) {
      std::filesystem::path dir = *d;
      c.outputs.dir = (dir.is_relative() ? base_dir / dir : dir).string();
    }
    c.outputs.runs = opt_field<bool>(o, "runs_csv", p).value_or(true);
    c.outputs.summary = opt_field<bool>(o, "summary_json", p).value_or(true);
    c.outputs.curve = opt_field<bool>(o, "curve_csv", p).value_or(true);
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return parse_config(j, std::filesystem::path(path).parent_path());
}

}  // namespace fidbandit
