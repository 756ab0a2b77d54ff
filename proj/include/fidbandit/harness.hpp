#pragma once

// Seeded replications: environment -> policy -> fidelity accounting ->
// regret against the oracle baselines, plus aggregation and emission.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fidbandit/bounds.hpp"
#include "fidbandit/config.hpp"
#include "fidbandit/core.hpp"
#include "fidbandit/environments.hpp"
#include "fidbandit/oracles.hpp"
#include "fidbandit/policies.hpp"
#include "fidbandit/random.hpp"

namespace fidbandit {

/// Neumaier compensated sum.
class StableSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Mean and standard error (sample sd / sqrt(n)).
struct MeanSe {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  StableSum s;
  for (double x : xs) s.add(x);
  const double mean = s.value() / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  StableSum ss;
  for (double x : xs) ss.add((x - mean) * (x - mean));
  const double sd = std::sqrt(ss.value() / static_cast<double>(xs.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

struct StepRow {
  std::size_t t = 0;  // 1-based in emitted files
  std::size_t arm = 0;
  double x = 0.0;
  double fid = 0.0;
  double cum_y = 0.0;
};

struct RunRecord {
  std::size_t rep = 0;
  std::uint64_t env_seed = 0;
  std::uint64_t policy_seed = 0;
  std::vector<StepRow> steps;
  std::vector<std::size_t> plays;
  double base_total = 0.0;
  double fidelity_total = 0.0;
  double realized = 0.0;  // sum of Y; pseudo value (means) for stochastic environments
  RegretReport report;
  std::vector<std::string> warnings;
};

struct RegretSummary {
  std::string kind;
  bool available = false;
  double mean = 0.0;
  double stderr_ = 0.0;
  double baseline = 0.0;  // averaged over replications
  bool estimated = false;
  std::string witness;
  std::string note;
  bool operator==(const RegretSummary&) const = default;
};

struct BoundSummary {
  std::string theorem;
  std::string description;
  double value = 0.0;
  std::string compared_kind;
  double compared_regret = 0.0;
  bool pass = false;
  bool operator==(const BoundSummary&) const = default;
};

struct SummaryRecord {
  std::string policy;
  std::string model;
  std::string environment;
  std::size_t arms = 0;
  std::size_t horizon = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double realized_mean = 0.0;
  double realized_stderr = 0.0;
  std::vector<RegretSummary> regret;
  std::optional<BoundSummary> bound;
  std::vector<std::string> warnings;
  bool operator==(const SummaryRecord&) const = default;

  const RegretSummary* find(const std::string& kind) const {
    for (const auto& r : regret)
      if (r.kind == kind) return &r;
    return nullptr;
  }
};

inline void to_json(json& j, const RegretSummary& r) {
  j = json{{"kind", r.kind}, {"available", r.available}};
  if (r.available) {
    j["mean"] = r.mean;
    j["stderr"] = r.stderr_;
    j["baseline"] = r.baseline;
    j["estimated"] = r.estimated;
    j["witness"] = r.witness;
  }
  j["note"] = r.note;
}
inline void from_json(const json& j, RegretSummary& r) {
  r = {};
  j.at("kind").get_to(r.kind);
  j.at("available").get_to(r.available);
  if (r.available) {
    j.at("mean").get_to(r.mean);
    j.at("stderr").get_to(r.stderr_);
    j.at("baseline").get_to(r.baseline);
    j.at("estimated").get_to(r.estimated);
    j.at("witness").get_to(r.witness);
  }
  j.at("note").get_to(r.note);
}
inline void to_json(json& j, const BoundSummary& b) {
  j = json{{"theorem", b.theorem}, {"description", b.description}, {"value", b.value},
           {"compared_kind", b.compared_kind}, {"compared_regret", b.compared_regret}, {"pass", b.pass}};
}
inline void from_json(const json& j, BoundSummary& b) {
  j.at("theorem").get_to(b.theorem);
  j.at("description").get_to(b.description);
  j.at("value").get_to(b.value);
  j.at("compared_kind").get_to(b.compared_kind);
  j.at("compared_regret").get_to(b.compared_regret);
  j.at("pass").get_to(b.pass);
}
inline void to_json(json& j, const SummaryRecord& s) {
  j = json{{"policy", s.policy},
           {"model", s.model},
           {"environment", s.environment},
           {"K", s.arms},
           {"T", s.horizon},
           {"reps", s.reps},
           {"seed", s.seed},
           {"realized", {{"mean", s.realized_mean}, {"stderr", s.realized_stderr}}},
           {"regret", s.regret},
           {"bound", s.bound ? json(*s.bound) : json(nullptr)},
           {"warnings", s.warnings}};
}
inline void from_json(const json& j, SummaryRecord& s) {
  j.at("policy").get_to(s.policy);
  j.at("model").get_to(s.model);
  j.at("environment").get_to(s.environment);
  j.at("K").get_to(s.arms);
  j.at("T").get_to(s.horizon);
  j.at("reps").get_to(s.reps);
  j.at("seed").get_to(s.seed);
  j.at("realized").at("mean").get_to(s.realized_mean);
  j.at("realized").at("stderr").get_to(s.realized_stderr);
  j.at("regret").get_to(s.regret);
  if (j.at("bound").is_null()) s.bound.reset();
  else s.bound = j.at("bound").get<BoundSummary>();
  j.at("warnings").get_to(s.warnings);
}

struct ExperimentResult {
  SummaryRecord summary;
  std::vector<RunRecord> runs;
  std::vector<double> curve_mean;    // regret at t = 1..T against the prorated final baseline
  std::vector<double> curve_stderr;
  std::string curve_kind;
};

struct RunOptions {
  bool record_steps = true;
};

namespace detail {

inline std::uint64_t env_seed(const ExperimentConfig& c, std::size_t rep) { return derive_seed(c.seed, "env", rep); }
inline std::uint64_t policy_seed(const ExperimentConfig& c, std::size_t rep) {
  return derive_seed(c.seed, "policy", rep);
}

/// The base-reward source of one replication.
inline Environment make_environment(const ExperimentConfig& c, std::size_t rep) {
  const auto& e = c.environment;
  switch (e.kind) {
    case EnvironmentKind::Stochastic: return StochasticInstance(e.means, e.distribution, env_seed(c, rep));
    case EnvironmentKind::IidAsAdversarial:
      return iid_as_adversarial(StochasticInstance(e.means, e.distribution, env_seed(c, rep)), c.horizon);
    case EnvironmentKind::LowerBoundPair: return lower_bound_pair(c.horizon, e.delta, e.which);
    default: return *e.matrix;
  }
}

inline bool baseline_per_rep(const ExperimentConfig& c) { return c.environment.kind == EnvironmentKind::IidAsAdversarial; }

inline BaselineSource baseline_source(const ExperimentConfig& c, const Environment& env) {
  if (c.stochastic()) return c.environment.means;
  return std::get<AdversarialInstance>(env);
}

inline const Baseline& pick(const Baselines& b, RegretKind k) {
  return k == RegretKind::Weak ? b.weak : k == RegretKind::Mean ? b.mean : b.strong;
}
inline const RegretEntry& pick(const RegretReport& r, RegretKind k) {
  return k == RegretKind::Weak ? r.weak : k == RegretKind::Mean ? r.mean : r.strong;
}

}  // namespace detail

/// Runs one replication with a precomputed or on-demand baseline.
inline RunRecord run_replication(const ExperimentConfig& c, std::size_t rep, const std::optional<Baselines>& shared,
                                 const RunOptions& opt = {}) {
  RunRecord r;
  r.rep = rep;
  r.env_seed = detail::env_seed(c, rep);
  r.policy_seed = detail::policy_seed(c, rep);
  const Environment env = detail::make_environment(c, rep);
  PolicyContext ctx{c.arms(), c.horizon, c.specs, c.model, r.policy_seed, c.overrides};
  auto policy = make_policy(c.policy, ctx);

  PlayState state(c.arms());
  const auto* stoch = std::get_if<StochasticInstance>(&env);
  double cum = 0.0;
  StableSum pseudo;
  if (opt.record_steps) r.steps.reserve(c.horizon);
  for (std::size_t t = 0; t < c.horizon; ++t) {
    const std::size_t arm = policy->select(t);
    const double x = base_reward(env, t, arm);
    const double fid = advance(state, c.specs, c.model, arm);
    policy->observe(t, arm, x, fid);
    r.base_total += x;
    r.fidelity_total += fid;
    cum += x + fid;
    pseudo.add((stoch ? stoch->means[arm] : x) + fid);
    if (opt.record_steps) r.steps.push_back({t + 1, arm, x, fid, cum});
  }
  r.plays = state.plays;
  r.realized = pseudo.value();
  r.warnings = policy->warnings();
  const Baselines b =
      shared ? *shared : compute_baselines(detail::baseline_source(c, env), c.specs, c.model, c.horizon);
  r.report = regret_report(b, r.realized);
  return r;
}

/// Baselines shared by all replications, or nullopt if they vary per rep.
inline std::optional<Baselines> shared_baselines(const ExperimentConfig& c) {
  if (detail::baseline_per_rep(c)) return std::nullopt;
  return compute_baselines(detail::baseline_source(c, detail::make_environment(c, 0)), c.specs, c.model, c.horizon);
}

/// The summary-level bound: theorem, value and the regret kind it controls.
inline std::optional<BoundSummary> bound_for(const ExperimentConfig& c, std::size_t grid_size = 0) {
  const auto id = theorem_for_policy(c.policy);
  if (!id) return std::nullopt;
  BoundInputs in{c.arms(), c.horizon, {}, c.specs, std::nullopt, std::nullopt};
  if (!c.environment.means.empty()) in.means = c.environment.means;
  else if (c.environment.matrix) in.means = c.environment.matrix->column_means();
  if (grid_size) in.grid_size = grid_size;
  BoundSummary b;
  b.theorem = *id;
  b.description = theorem_description(*id);
  try {
    b.value = bound_value(*id, in);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  b.compared_kind = c.model == RewardModel::Subscription ? "strong" : "mean";
  return b;
}

inline ExperimentResult run_experiment(const ExperimentConfig& c, const RunOptions& opt = {}) {
  if (c.specs.size() != c.arms() || c.arms() == 0) throw std::invalid_argument("run_experiment: invalid arm count");
  const auto shared = shared_baselines(c);
  ExperimentResult out;
  out.runs.resize(c.reps);
  const std::size_t workers = std::min(c.threads, c.reps);
  if (workers <= 1) {
    for (std::size_t rep = 0; rep < c.reps; ++rep) out.runs[rep] = run_replication(c, rep, shared, opt);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t rep = w; rep < c.reps; rep += workers) out.runs[rep] = run_replication(c, rep, shared, opt);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SummaryRecord& s = out.summary;
  s.policy = c.policy;
  s.model = std::string(to_string(c.model));
  s.environment = to_string(c.environment.kind);
  s.arms = c.arms();
  s.horizon = c.horizon;
  s.reps = c.reps;
  s.seed = c.seed;
  std::vector<double> realized;
  for (const auto& r : out.runs) realized.push_back(r.realized);
  const auto rs = mean_se(realized);
  s.realized_mean = rs.mean;
  s.realized_stderr = rs.stderr_;

  for (RegretKind kind : c.regret) {
    RegretSummary rsum;
    rsum.kind = to_string(kind);
    const auto& first = detail::pick(out.runs.front().report, kind);
    rsum.available = std::all_of(out.runs.begin(), out.runs.end(),
                                 [&](const RunRecord& r) { return detail::pick(r.report, kind).available; });
    rsum.note = first.note;
    if (rsum.available) {
      std::vector<double> regrets, baselines;
      for (const auto& r : out.runs) {
        regrets.push_back(detail::pick(r.report, kind).regret);
        baselines.push_back(detail::pick(r.report, kind).baseline);
      }
      const auto m = mean_se(regrets);
      rsum.mean = m.mean;
      rsum.stderr_ = m.stderr_;
      rsum.baseline = mean_se(baselines).mean;
      rsum.estimated = first.estimated;
      rsum.witness = first.witness;
    } else if (rsum.note.empty()) {
      rsum.note = "unavailable";
    }
    s.regret.push_back(std::move(rsum));
  }

  for (const auto& r : out.runs)
    for (const auto& w : r.warnings)
      if (std::find(s.warnings.begin(), s.warnings.end(), w) == s.warnings.end()) s.warnings.push_back(w);

  std::size_t grid = 0;
  if (c.policy == "exp4_cover") {
    PolicyContext ctx{c.arms(), c.horizon, c.specs, c.model, 0, c.overrides};
    grid = Exp4CoverPolicy(ctx).grid().size();
  }
  s.bound = bound_for(c, grid);
  if (s.bound) {
    if (const auto* r = s.find(s.bound->compared_kind); r && r->available) {
      s.bound->compared_regret = r->mean;
      s.bound->pass = r->mean <= s.bound->value;
    }
  }

  // Curve against the final baseline prorated over time.
  const RegretKind order[] = {RegretKind::Mean, RegretKind::Strong, RegretKind::Weak};
  std::optional<RegretKind> curve_kind;
  for (RegretKind k : order)
    if (std::find(c.regret.begin(), c.regret.end(), k) != c.regret.end())
      if (const auto* r = s.find(to_string(k)); r && r->available) {
        curve_kind = k;
        break;
      }
  if (curve_kind && opt.record_steps) {
    out.curve_kind = to_string(*curve_kind);
    out.curve_mean.resize(c.horizon);
    out.curve_stderr.resize(c.horizon);
    std::vector<double> at_t(c.reps);
    for (std::size_t t = 0; t < c.horizon; ++t) {
      for (std::size_t rep = 0; rep < c.reps; ++rep) {
        const auto& run = out.runs[rep];
        const double base = detail::pick(run.report, *curve_kind).baseline;
        at_t[rep] = base * static_cast<double>(t + 1) / static_cast<double>(c.horizon) - run.steps[t].cum_y;
      }
      const auto m = mean_se(at_t);
      out.curve_mean[t] = m.mean;
      out.curve_stderr[t] = m.stderr_;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Emission.

inline void write_runs_csv(const RunRecord& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write run record '" + path + "'");
  out << std::setprecision(17) << "t,arm,x,fid,cum_y\n";
  for (const auto& s : r.steps) out << s.t << ',' << s.arm << ',' << s.x << ',' << s.fid << ',' << s.cum_y << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline void write_summary_json(const SummaryRecord& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary '" + path + "'");
  out << std::setw(2) << json(s) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline SummaryRecord read_summary_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summary '" + path + "'");
  return json::parse(in).get<SummaryRecord>();
}

inline void write_curve_csv(const ExperimentResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write regret curve '" + path + "'");
  out << std::setprecision(17) << "t,mean_regret,stderr\n";
  for (std::size_t t = 0; t < r.curve_mean.size(); ++t)
    out << t + 1 << ',' << r.curve_mean[t] << ',' << r.curve_stderr[t] << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

/// Writes runs/run_<rep>.csv, summary.json and curve.csv under dir.
inline std::vector<std::string> emit(const ExperimentResult& r, const std::string& dir, const OutputConfig& what = {}) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  if (what.runs) {
    fs::create_directories(fs::path(dir) / "runs", ec);
    if (ec) throw std::runtime_error("cannot create '" + (fs::path(dir) / "runs").string() + "': " + ec.message());
    for (const auto& run : r.runs) {
      const auto p = (fs::path(dir) / "runs" / ("run_" + std::to_string(run.rep) + ".csv")).string();
      write_runs_csv(run, p);
      written.push_back(p);
    }
  }
  if (what.summary) {
    const auto p = (fs::path(dir) / "summary.json").string();
    write_summary_json(r.summary, p);
    written.push_back(p);
  }
  if (what.curve && !r.curve_mean.empty()) {
    const auto p = (fs::path(dir) / "curve.csv").string();
    write_curve_csv(r, p);
    written.push_back(p);
  }
  return written;
}

// ---------------------------------------------------------------------------
// Oracle report for a configuration (no policy involved).

inline json baseline_json(const Baseline& b) {
  if (!b.available) return json{{"available", false}, {"note", b.note}};
  return json{{"available", true}, {"value", b.value}, {"estimated", b.estimated}, {"witness", b.witness}, {"note", b.note}};
}

/// Baselines of the configured instance. For per-replication matrices the
/// first replication's matrix is used.
inline json oracle_report(const ExperimentConfig& c, std::optional<double> realized = std::nullopt) {
  const Environment env = detail::make_environment(c, 0);
  const Baselines b = compute_baselines(detail::baseline_source(c, env), c.specs, c.model, c.horizon);
  json out;
  out["model"] = std::string(to_string(c.model));
  out["K"] = c.arms();
  out["T"] = c.horizon;
  out["baselines"] = {{"weak", baseline_json(b.weak)}, {"mean", baseline_json(b.mean)}, {"strong", baseline_json(b.strong)}};
  auto value = [](const Baseline& x) { return x.available ? json(x.value) : json(nullptr); };
  out["witnesses"] = {{"weak", b.weak.witness}, {"mean", b.mean.witness}, {"strong", b.strong.witness}};
  out["estimated_flags"] = {{"weak", b.weak.estimated}, {"mean", b.mean.estimated}, {"strong", b.strong.estimated}};
  if (realized) {
    const auto rep = regret_report(b, *realized);
    auto regret = [](const RegretEntry& e) { return e.available ? json(e.regret) : json(nullptr); };
    out["realized"] = *realized;
    out["weak"] = regret(rep.weak);
    out["mean"] = regret(rep.mean);
    out["strong"] = regret(rep.strong);
  } else {
    out["weak"] = value(b.weak);
    out["mean"] = value(b.mean);
    out["strong"] = value(b.strong);
  }
  return out;
}

}  // namespace fidbandit
