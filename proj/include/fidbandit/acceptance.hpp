#pragma once

// End-to-end acceptance suite. Every criterion runs on fixed seeds and has a
// wall-clock budget; exceeding the budget fails the criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fidbandit/bounds.hpp"
#include "fidbandit/config.hpp"
#include "fidbandit/harness.hpp"
#include "fidbandit/oracles.hpp"
#include "fidbandit/policies.hpp"
#include "fidbandit/random.hpp"

namespace fidbandit::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;
};

namespace detail {

// Multiples of 1/256 keep every sum in these checks exact in binary floating point.
inline double dyadic(Rng& rng, int lo = 0, int hi = 256) {
  return static_cast<double>(lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1))) / 256.0;
}

inline std::vector<double> dyadic_vector(Rng& rng, std::size_t n, int lo = 0, int hi = 256) {
  std::vector<double> v(n);
  for (double& x : v) x = dyadic(rng, lo, hi);
  return v;
}

/// Strictly decreasing table of n distinct dyadic values in (0, 1).
inline std::vector<double> strictly_decreasing(Rng& rng, std::size_t n) {
  std::vector<int> pool(255);
  for (int i = 0; i < 255; ++i) pool[i] = i + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<int> pick(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(pick.begin(), pick.end(), std::greater<>());
  std::vector<double> v;
  for (int p : pick) v.push_back(p / 256.0);
  return v;
}

inline std::vector<double> nonincreasing(Rng& rng, std::size_t n) {
  auto v = dyadic_vector(rng, n);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline AdversarialInstance dyadic_matrix(Rng& rng, std::size_t rounds, std::size_t arms) {
  return AdversarialInstance(rounds, arms, dyadic_vector(rng, rounds * arms));
}

inline std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << std::fixed << x;
  return os.str();
}

inline ExperimentConfig make_config(RewardModel model, std::size_t horizon, std::size_t reps, std::uint64_t seed,
                                    SpecList specs, EnvironmentConfig env, std::string policy,
                                    std::vector<RegretKind> regret, PolicyOverrides ov = {}) {
  ExperimentConfig c;
  c.model = model;
  c.horizon = horizon;
  c.reps = reps;
  c.seed = seed;
  c.specs = std::move(specs);
  c.environment = std::move(env);
  c.policy = std::move(policy);
  c.regret = std::move(regret);
  c.overrides = ov;
  return c;
}

inline EnvironmentConfig stochastic_env(std::vector<double> means, EnvironmentKind kind = EnvironmentKind::Stochastic) {
  EnvironmentConfig e;
  e.kind = kind;
  e.means = std::move(means);
  e.distribution = Distribution::Bernoulli;
  return e;
}

inline FidelitySpec geometric_decay(std::size_t horizon, double scale, double ratio) {
  std::vector<double> v(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) v[n - 1] = scale * std::pow(ratio, static_cast<double>(n));
  return FidelitySpec::tabular(horizon, std::move(v), Family::Decreasing);
}

inline double run_mean_regret(const ExperimentConfig& c, RegretKind kind, ExperimentResult* keep = nullptr) {
  auto r = run_experiment(c, RunOptions{false});
  const auto* s = r.summary.find(to_string(kind));
  if (!s || !s->available) throw std::runtime_error("regret kind " + to_string(kind) + " unavailable");
  const double v = s->mean;
  if (keep) *keep = std::move(r);
  return v;
}

}  // namespace detail

// 1. weak <= mean <= strong at enumeration scale.
inline CriterionResult ordering() {
  Rng rng(derive_seed(2024, "acceptance", 1));
  std::size_t bad = 0, type_bad = 0, types = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t K = 2 + static_cast<std::size_t>(inst % 2);
    const std::size_t T = (inst / 2) % 2 ? 8 : 6;
    SpecList specs;
    for (std::size_t j = 0; j < K; ++j)
      specs.push_back(FidelitySpec::tabular(T, detail::strictly_decreasing(rng, T), Family::Decreasing));
    const auto x = detail::dyadic_matrix(rng, T, K);
    const auto bf = brute_force_baselines(x, specs, RewardModel::LoyaltyPoints);
    if (!(bf.weak <= *bf.mean + 1e-9 && *bf.mean <= bf.strong + 1e-9)) ++bad;
    const auto mu_hat = x.column_means();
    for (const auto& st : bf.types) {
      ++types;
      const double s = sigma(mu_hat, st.type, specs);
      if (!(st.min <= s + 1e-9 && s <= st.max + 1e-9)) ++type_bad;
    }
  }
  return {1, "weak <= mean <= strong (enumeration)", bad == 0 && type_bad == 0,
          std::to_string(100 - bad) + "/100 instances ordered, " + std::to_string(types - type_bad) + "/" +
              std::to_string(types) + " types bracket sigma",
          0.0, 30.0};
}

// 2. DP equals exhaustive type search; greedy equals DP under nonincreasing fidelity.
inline CriterionResult oracle_equivalence() {
  Rng rng(derive_seed(2024, "acceptance", 2));
  std::size_t dp_ok = 0, greedy_ok = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t K = 1 + rng() % 3;
    const std::size_t T = std::max<std::size_t>(K, 1 + rng() % 20);
    const auto mu = detail::dyadic_vector(rng, K);
    SpecList specs;
    for (std::size_t j = 0; j < K; ++j) specs.push_back(FidelitySpec::tabular(T, detail::dyadic_vector(rng, T)));
    double best = -1.0;
    std::vector<std::size_t> n(K, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) {
      if (j + 1 == K) {
        n[j] = left;
        best = std::max(best, sigma(mu, TypeVector{n}, specs));
        return;
      }
      for (std::size_t v = 0; v <= left; ++v) {
        n[j] = v;
        rec(j + 1, left - v);
      }
    };
    rec(0, T);
    if (best_type_dp(mu, specs, T).value == best) ++dp_ok;
  }
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t K = 1 + rng() % 4;
    const std::size_t T = std::max<std::size_t>(K, 1 + rng() % 200);
    const auto mu = detail::dyadic_vector(rng, K);
    SpecList specs;
    for (std::size_t j = 0; j < K; ++j)
      specs.push_back(FidelitySpec::tabular(T, detail::nonincreasing(rng, T), Family::Decreasing));
    if (best_type_greedy(mu, specs, T).value == best_type_dp(mu, specs, T).value) ++greedy_ok;
  }
  return {2, "DP = exhaustive, greedy = DP", dp_ok == 100 && greedy_ok == 200,
          "DP exact on " + std::to_string(dp_ok) + "/100, greedy exact on " + std::to_string(greedy_ok) + "/200", 0.0,
          30.0};
}

// 3. Closed-form periodic value equals replay on constant rewards.
inline CriterionResult periodic_consistency() {
  Rng rng(derive_seed(2024, "acceptance", 3));
  const std::size_t K = 3, T = 120;
  const auto mu = detail::dyadic_vector(rng, K);
  SpecList specs;
  for (std::size_t j = 0; j < K; ++j)
    specs.push_back(FidelitySpec::tabular(T, detail::nonincreasing(rng, T), Family::Decreasing));
  const auto x = AdversarialInstance::constant(T, mu);
  std::size_t total = 0, exact = 0;
  for (const auto& e : periodic_experts(K, T)) {
    ++total;
    const double w = periodic_value(e.i, e.k, e.m, mu, specs, T);
    const auto seq = e.sequence(T);
    const double s = simulate_sequence(seq, x, specs, RewardModel::Subscription);
    const double fid = simulate_with([&](std::size_t t) { return seq[t]; }, x, specs, RewardModel::Subscription).fidelity;
    if (w == s && phi(e.i, e.k, e.m, specs, T) == fid / static_cast<double>(T)) ++exact;
  }
  return {3, "periodic value = replay", exact == total,
          std::to_string(exact) + "/" + std::to_string(total) + " sequences (i != k, plus single-arm) match exactly",
          0.0, 10.0};
}

// 4. Importance estimates are unbiased.
inline CriterionResult estimator_unbiasedness() {
  Rng rng(derive_seed(2024, "acceptance", 4));
  constexpr int draws = 100000;
  std::size_t checks = 0, ok = 0;
  double worst = 0.0;
  auto record = [&](double sum, double sum_sq, double target) {
    const double mean = sum / draws;
    const double var = std::max(0.0, (sum_sq - draws * mean * mean) / (draws - 1));
    const double se = std::sqrt(var / draws);
    const double z = se > 0 ? std::abs(mean - target) / se : (mean == target ? 0.0 : 1e9);
    worst = std::max(worst, z);
    ++checks;
    if (z <= 3.0) ++ok;
  };
  for (int cfg = 0; cfg < 20; ++cfg) {
    const std::size_t K = 2 + cfg % 3;
    std::vector<double> q(K);
    double z = 0.0;
    for (double& v : q) z += v = 0.2 + uniform01(rng);
    for (double& v : q) v /= z;
    const auto xs = detail::dyadic_vector(rng, K);
    for (std::size_t j = 0; j < K; ++j) {
      double s = 0.0, ss = 0.0;
      Rng draw(derive_seed(77, "exp4", static_cast<std::uint64_t>(cfg * 8 + j)));
      for (int d = 0; d < draws; ++d) {
        const double e = importance_estimate(xs[j], q[j], sample_index(q, uniform01(draw)) == j);
        s += e;
        ss += e * e;
      }
      record(s, ss, xs[j]);
    }
  }
  for (int cfg = 0; cfg < 20; ++cfg) {
    const std::size_t K = 2 + cfg % 3;
    const double eps = 0.05 + 0.45 * uniform01(rng);
    const double ph = uniform01(rng);
    const double x = uniform01(rng);
    const std::size_t arm = rng() % K;
    double s = 0.0, ss = 0.0;
    Rng draw(derive_seed(77, "lazy", static_cast<std::uint64_t>(cfg)));
    for (int d = 0; d < draws; ++d) {
      const bool explored = uniform01(draw) < eps;
      const std::size_t j = static_cast<std::size_t>(uniform01(draw) * static_cast<double>(K)) % K;
      const double y = lazy_estimate(explored, j == arm, K, eps, x, ph);
      s += y;
      ss += y * y;
    }
    record(s, ss, x + ph);
  }
  return {4, "importance estimates unbiased", ok == checks,
          std::to_string(ok) + "/" + std::to_string(checks) + " within 3 s.e. (max |z| = " + detail::fmt(worst, 2) + ")",
          0.0, 30.0};
}

// 5. UCB with fidelity bonus, stochastic loyalty, increasing fidelity.
inline CriterionResult theorem2() {
  const std::size_t T = 20000;
  std::vector<double> mu = {0.9, 0.7, 0.7, 0.7, 0.7};
  std::vector<double> f(T);
  for (std::size_t n = 1; n <= T; ++n) f[n - 1] = std::min(static_cast<double>(n) / T, 1.0);
  const SpecList specs(5, FidelitySpec::tabular(T, f, Family::Increasing));
  const auto c = detail::make_config(RewardModel::LoyaltyPoints, T, 20, 5, specs, detail::stochastic_env(mu),
                                     "fidelity_ucb", {RegretKind::Mean});
  const double regret = detail::run_mean_regret(c, RegretKind::Mean);
  const double bound = bound_value("2", {5, T, mu, specs, {}, {}});
  return {5, "fidelity_ucb within UCB bound", regret <= bound,
          "mean pseudo-regret " + detail::fmt(regret, 1) + " <= bound " + detail::fmt(bound, 1), 0.0, 120.0};
}

// 6. EXP4 over the cover, adversarial loyalty, decreasing fidelity.
inline CriterionResult theorem4() {
  const std::size_t T = 2000;
  std::vector<double> f(T);
  for (std::size_t n = 1; n <= T; ++n) f[n - 1] = std::max(0.0, 1.0 - static_cast<double>(n) / T);
  const SpecList specs(2, FidelitySpec::tabular(T, f, Family::Decreasing));
  const auto c = detail::make_config(RewardModel::LoyaltyPoints, T, 20, 6, specs,
                                     detail::stochastic_env({0.8, 0.2}, EnvironmentKind::IidAsAdversarial),
                                     "exp4_cover", {RegretKind::Mean});
  const double regret = detail::run_mean_regret(c, RegretKind::Mean);
  PolicyContext ctx{2, T, specs, RewardModel::LoyaltyPoints, 0, {}};
  const std::size_t M = Exp4CoverPolicy(ctx).grid().size();
  const double bound = bound_value("4_grid", {2, T, {}, specs, {}, M});

  // The continuous relaxation max_q T(<q, mu_hat> + h(q)) is attained at an integral type.
  const auto x = iid_as_adversarial(StochasticInstance({0.8, 0.2}, Distribution::Bernoulli, derive_seed(6, "env", 0)), T);
  const auto mu_hat = x.column_means();
  const double dp = best_type_greedy(mu_hat, specs, T).value;
  double relaxed = -1.0;
  for (std::size_t n = 0; n <= 4 * T; ++n) {
    const double q0 = static_cast<double>(n) / (4.0 * T);
    const std::vector<double> q = {q0, 1.0 - q0};
    relaxed = std::max(relaxed, static_cast<double>(T) * (q0 * mu_hat[0] + q[1] * mu_hat[1] + h_extension(specs, T, q)));
  }
  const bool relaxation_ok = std::abs(relaxed - dp) <= 1e-6 * static_cast<double>(T);
  return {6, "exp4_cover within cover-size bound", regret <= bound && relaxation_ok,
          "mean regret " + detail::fmt(regret, 1) + " <= bound " + detail::fmt(bound, 1) + " (M = " +
              std::to_string(M) + "); relaxed optimum " + detail::fmt(relaxed, 3) + " vs type optimum " +
              detail::fmt(dp, 3),
          0.0, 180.0};
}

// 7. EXP3 on augmented rewards, adversarial loyalty coupons.
inline CriterionResult theorem6() {
  const std::size_t T = 10000;
  SpecList specs = {FidelitySpec::coupon(T, 2, 0.6), FidelitySpec::coupon(T, 3, 0.6), FidelitySpec::coupon(T, 4, 0.6)};
  const auto c = detail::make_config(RewardModel::LoyaltyPoints, T, 20, 7, specs,
                                     detail::stochastic_env({0.6, 0.5, 0.4}, EnvironmentKind::IidAsAdversarial),
                                     "augmented_exp3", {RegretKind::Mean, RegretKind::Strong});
  ExperimentResult r;
  const double mean_regret = detail::run_mean_regret(c, RegretKind::Mean, &r);
  const auto* strong = r.summary.find("strong");
  const double bound = bound_value("6", {3, T, {}, specs, {}, {}});
  const double strong_bound = bound_value("6_strong", {3, T, {}, specs, {}, {}});
  const bool ok = mean_regret <= bound && strong && strong->available && strong->mean <= strong_bound;
  return {7, "augmented_exp3 within EXP3 bound", ok,
          "mean regret " + detail::fmt(mean_regret, 1) + " <= " + detail::fmt(bound, 1) + "; strong-estimate regret " +
              (strong && strong->available ? detail::fmt(strong->mean, 1) : std::string("n/a")) + " <= " +
              detail::fmt(strong_bound, 1),
          0.0, 60.0};
}

// 8. Explore-then-commit on periodic sequences, stochastic subscription.
inline CriterionResult theorem10() {
  const std::size_t T = 8000;
  const SpecList specs = {detail::geometric_decay(T, 0.8, 0.9), FidelitySpec::zero(T)};
  const auto c = detail::make_config(RewardModel::Subscription, T, 20, 8, specs, detail::stochastic_env({0.3, 0.5}),
                                     "etc_triple", {RegretKind::Strong});
  ExperimentResult r;
  const double regret = detail::run_mean_regret(c, RegretKind::Strong, &r);
  const double bound = bound_value("10", {2, T, {}, specs, {}, {}});
  return {8, "etc_triple within ETC bound", regret <= bound,
          "mean pseudo-regret " + detail::fmt(regret, 1) + " <= bound " + detail::fmt(bound, 1) + " (baseline " +
              r.summary.find("strong")->witness + ")",
          0.0, 60.0};
}

// 9. Lazy EWA, adversarial subscription.
inline CriterionResult theorem11() {
  const std::size_t T = 5000;
  const SpecList specs = {detail::geometric_decay(T, 0.8, 0.9), FidelitySpec::zero(T)};
  const auto c = detail::make_config(RewardModel::Subscription, T, 20, 9, specs,
                                     detail::stochastic_env({0.3, 0.5}, EnvironmentKind::IidAsAdversarial), "lazy_ewa",
                                     {RegretKind::Strong});
  const double regret = detail::run_mean_regret(c, RegretKind::Strong);
  const double bound = bound_value("11", {2, T, {}, specs, {}, {}});
  return {9, "lazy_ewa within lazy bound", regret <= bound,
          "mean regret " + detail::fmt(regret, 1) + " <= bound " + detail::fmt(bound, 1), 0.0, 300.0};
}

// 10. Batched UCB, stochastic subscription coupons.
inline CriterionResult theorem12() {
  const std::size_t T = 20000;
  const std::vector<double> mu = {0.6, 0.5, 0.45};
  SpecList specs = {FidelitySpec::coupon(T, 2, 0.6), FidelitySpec::coupon(T, 3, 0.6), FidelitySpec::coupon(T, 4, 0.6)};
  const auto c = detail::make_config(RewardModel::Subscription, T, 20, 10, specs, detail::stochastic_env(mu),
                                     "batch_ucb_coupons", {RegretKind::Strong});
  ExperimentResult r;
  const double regret = detail::run_mean_regret(c, RegretKind::Strong, &r);
  const double bound = bound_value("12", {3, T, mu, specs, {}, {}});
  const auto play_bounds = bounds::batch_ucb_play_counts(mu, specs, T);
  bool plays_ok = true;
  std::string plays;
  for (std::size_t j = 0; j < 3; ++j) {
    if (!play_bounds[j]) continue;
    double n = 0.0;
    for (const auto& run : r.runs) n += static_cast<double>(run.plays[j]);
    n /= static_cast<double>(r.runs.size());
    plays_ok = plays_ok && n <= *play_bounds[j];
    plays += " N" + std::to_string(j + 1) + "=" + detail::fmt(n, 0) + "<=" + detail::fmt(*play_bounds[j], 0);
  }
  return {10, "batch_ucb_coupons within batched UCB bound", regret <= bound && plays_ok,
          "mean regret " + detail::fmt(regret, 1) + " <= bound " + detail::fmt(bound, 1) + ";" + plays, 0.0, 120.0};
}

// 11. No policy escapes the lower bound on the two-instance construction.
inline CriterionResult theorem3() {
  const std::size_t T = 4000;
  const double delta = 1.0;
  const SpecList specs(2, FidelitySpec::step(T, T / 4));
  const double bound = bound_value("3", {2, T, {}, specs, delta, {}});
  std::size_t ok = 0;
  double weakest = std::numeric_limits<double>::infinity();
  std::string weakest_tag;
  PolicyOverrides ov;
  ov.strict = false;
  for (const auto& tag : policy_tags()) {
    double worst = -std::numeric_limits<double>::infinity();
    for (LowerBoundCase which : {LowerBoundCase::I, LowerBoundCase::II}) {
      EnvironmentConfig env;
      env.kind = EnvironmentKind::LowerBoundPair;
      env.delta = delta;
      env.which = which;
      const auto c = detail::make_config(RewardModel::LoyaltyPoints, T, 5, 11, specs, env, tag, {RegretKind::Strong}, ov);
      worst = std::max(worst, detail::run_mean_regret(c, RegretKind::Strong));
    }
    if (worst >= bound) ++ok;
    if (worst < weakest) {
      weakest = worst;
      weakest_tag = tag;
    }
  }
  return {11, "lower bound holds for every policy", ok == policy_tags().size(),
          std::to_string(ok) + "/" + std::to_string(policy_tags().size()) + " policies >= " + detail::fmt(bound, 0) +
              " (smallest: " + weakest_tag + " " + detail::fmt(weakest, 1) + ")",
          0.0, 120.0};
}

// 12. Regret grows sublinearly: R(4T) / R(T) <= 3.
inline CriterionResult sublinearity() {
  struct Case {
    std::string name;
    std::function<ExperimentConfig(std::size_t)> make;
    std::size_t T;
  };
  auto ramp_down = [](std::size_t T) {
    std::vector<double> f(T);
    for (std::size_t n = 1; n <= T; ++n) f[n - 1] = std::max(0.0, 1.0 - static_cast<double>(n) / T);
    return SpecList(2, FidelitySpec::tabular(T, f, Family::Decreasing));
  };
  auto exp4 = [&](std::size_t T) {
    return detail::make_config(RewardModel::LoyaltyPoints, T, 20, 12, ramp_down(T),
                               detail::stochastic_env({0.8, 0.2}, EnvironmentKind::IidAsAdversarial), "exp4_cover",
                               {RegretKind::Mean});
  };
  auto lazy = [&](std::size_t T) {
    return detail::make_config(RewardModel::Subscription, T, 20, 12, ramp_down(T),
                               detail::stochastic_env({0.8, 0.2}, EnvironmentKind::IidAsAdversarial), "lazy_ewa",
                               {RegretKind::Strong});
  };
  auto batch = [](std::size_t T) {
    return detail::make_config(RewardModel::Subscription, T, 20, 12,
                               SpecList(2, FidelitySpec::step(T, 1, Indexing::PriorCount)),
                               detail::stochastic_env({0.6, 0.4}, EnvironmentKind::IidAsAdversarial),
                               "batch_exp3_mstep", {RegretKind::Strong});
  };
  const std::vector<Case> cases = {{"exp4_cover", exp4, 1000}, {"lazy_ewa", lazy, 1000}, {"batch_exp3_mstep", batch, 10000}};
  bool pass = true;
  std::string detail;
  for (const auto& cs : cases) {
    const auto small = cs.make(cs.T);
    const auto large = cs.make(4 * cs.T);
    const RegretKind kind = small.regret.front();
    const double r1 = detail::run_mean_regret(small, kind);
    const double r4 = detail::run_mean_regret(large, kind);
    const double ratio = r4 / r1;
    const bool ok = r1 > 0.0 && ratio <= 3.0;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + cs.name + " " + detail::fmt(r1, 1) + " -> " + detail::fmt(r4, 1) +
              " (x" + detail::fmt(ratio, 2) + ")";
  }
  return {12, "sublinear regret growth", pass, detail, 0.0, 600.0};
}

inline const std::vector<std::function<CriterionResult()>>& criteria() {
  static const std::vector<std::function<CriterionResult()>> all = {
      ordering, oracle_equivalence, periodic_consistency, estimator_unbiasedness, theorem2, theorem4,
      theorem6, theorem10,          theorem11,            theorem12,              theorem3, sublinearity};
  return all;
}

/// Runs one criterion (1-based) with its time budget enforced.
inline CriterionResult run_criterion(std::size_t id) {
  if (id == 0 || id > criteria().size()) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = criteria()[id - 1]();
  } catch (const std::exception& e) {
    r = {static_cast<int>(id), "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), 0.0, 0.0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.limit > 0.0 && r.seconds > r.limit) {
    r.pass = false;
    r.detail += " [time budget exceeded]";
  }
  return r;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << " | " << r.detail << " | "
     << std::fixed << std::setprecision(1) << r.seconds << "s / " << r.limit << "s";
  return os.str();
}

/// Runs the selected criteria (all when empty), printing one line each.
inline bool run_all(std::ostream& out, const std::vector<std::size_t>& only = {}) {
  bool all_pass = true;
  for (std::size_t id = 1; id <= criteria().size(); ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto r = run_criterion(id);
    all_pass = all_pass && r.pass;
    out << format_line(r) << std::endl;
  }
  return all_pass;
}

}  // namespace fidbandit::acceptance
