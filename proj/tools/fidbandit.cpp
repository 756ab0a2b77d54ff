// Command-line front end: simulate, oracle, bounds, accept.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fidbandit/acceptance.hpp"
#include "fidbandit/bounds.hpp"
#include "fidbandit/config.hpp"
#include "fidbandit/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kAcceptanceFailure = 2;

int simulate(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::size_t> reps,
             std::optional<std::string> out_dir, std::optional<std::size_t> threads) {
  auto cfg = fidbandit::load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (reps) {
    if (*reps == 0) throw fidbandit::ConfigError("reps", "must be at least 1");
    cfg.reps = *reps;
  }
  if (out_dir) cfg.outputs.dir = *out_dir;
  if (threads) cfg.threads = std::max<std::size_t>(*threads, 1);
  const auto result = fidbandit::run_experiment(cfg, {!cfg.outputs.dir.empty()});
  for (const auto& w : result.summary.warnings) std::cerr << "warning: " << w << '\n';
  if (!cfg.outputs.dir.empty())
    for (const auto& path : fidbandit::emit(result, cfg.outputs.dir, cfg.outputs)) std::cerr << "wrote " << path << '\n';
  std::cout << std::setw(2) << fidbandit::json(result.summary) << '\n';
  return kOk;
}

int oracle(const std::string& config_path, std::optional<double> realized) {
  const auto cfg = fidbandit::load_config(config_path);
  std::cout << std::setw(2) << fidbandit::oracle_report(cfg, realized) << '\n';
  return kOk;
}

int bounds(const std::string& theorem, const std::string& config_path) {
  const auto cfg = fidbandit::load_config(config_path);
  fidbandit::BoundInputs in{cfg.arms(), cfg.horizon, {}, cfg.specs, std::nullopt, std::nullopt};
  if (!cfg.environment.means.empty()) in.means = cfg.environment.means;
  else if (cfg.environment.matrix) in.means = cfg.environment.matrix->column_means();
  if (cfg.environment.kind == fidbandit::EnvironmentKind::LowerBoundPair) in.delta = cfg.environment.delta;
  if (theorem == "4_grid") {
    fidbandit::PolicyContext ctx{cfg.arms(), cfg.horizon, cfg.specs, cfg.model, 0, cfg.overrides};
    ctx.overrides.strict = false;
    in.grid_size = fidbandit::Exp4CoverPolicy(ctx).grid().size();
  }
  const double value = fidbandit::bound_value(theorem, in);
  fidbandit::json out = {{"theorem", theorem},
                         {"description", fidbandit::theorem_description(theorem)},
                         {"K", cfg.arms()},
                         {"T", cfg.horizon},
                         {"value", value}};
  if (in.grid_size) out["grid_size"] = *in.grid_size;
  std::cout << std::setw(2) << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-armed bandits with fidelity rewards: simulation, oracles and regret bounds"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps, threads;
  std::optional<std::string> out_dir;
  auto* sim = app.add_subcommand("simulate", "run seeded replications and print the summary");
  sim->add_option("--config", config, "experiment JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--seed", seed, "override the experiment seed");
  sim->add_option("--reps", reps, "override the number of replications");
  sim->add_option("--out", out_dir, "directory for runs/*.csv, summary.json and curve.csv");
  sim->add_option("--threads", threads, "replications run concurrently");

  std::optional<double> realized;
  auto* orc = app.add_subcommand("oracle", "print weak/mean/strong baselines of a configured instance");
  orc->add_option("--config", config, "experiment JSON")->required()->check(CLI::ExistingFile);
  orc->add_option("--realized", realized, "a policy's realized reward; prints regrets instead of baselines");

  std::string theorem;
  auto* bnd = app.add_subcommand("bounds", "evaluate a closed-form regret bound on a configured instance");
  bnd->add_option("--theorem", theorem, "theorem id")->required()->check(CLI::IsMember(fidbandit::theorem_ids()));
  bnd->add_option("--config", config, "experiment JSON")->required()->check(CLI::ExistingFile);

  std::vector<std::size_t> only;
  auto* acc = app.add_subcommand("accept", "run the acceptance suite and print a pass/fail table");
  acc->add_option("--only", only, "criterion numbers to run (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*sim) return simulate(config, seed, reps, out_dir, threads);
    if (*orc) return oracle(config, realized);
    if (*bnd) return bounds(theorem, config);
    if (*acc) return fidbandit::acceptance::run_all(std::cout, only) ? kOk : kAcceptanceFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
