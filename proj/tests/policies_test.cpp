#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fidbandit/environments.hpp"
#include "fidbandit/policies.hpp"

using namespace fidbandit;

namespace {

struct Trace {
  std::vector<std::size_t> arms;
  std::vector<double> fidelity;
};

// Plays a policy against a fixed reward matrix. `probe` runs after each select.
template <class Probe>
Trace drive(Policy& p, const AdversarialInstance& x, const SpecList& specs, RewardModel model, Probe&& probe) {
  Trace tr;
  PlayState st(x.arms());
  for (std::size_t t = 0; t < x.rounds(); ++t) {
    const std::size_t a = p.select(t);
    probe(t, a);
    const double f = advance(st, specs, model, a);
    p.observe(t, a, x(t, a), f);
    tr.arms.push_back(a);
    tr.fidelity.push_back(f);
  }
  return tr;
}

Trace drive(Policy& p, const AdversarialInstance& x, const SpecList& specs, RewardModel model) {
  return drive(p, x, specs, model, [](std::size_t, std::size_t) {});
}

PolicyContext make_ctx(SpecList specs, RewardModel model, std::size_t horizon, std::uint64_t seed = 1) {
  PolicyContext c;
  c.arms = specs.size();
  c.horizon = horizon;
  c.specs = std::move(specs);
  c.model = model;
  c.seed = seed;
  return c;
}

SpecList decreasing_specs(std::size_t T) {
  return {FidelitySpec::tabular(T, {0.6, 0.4, 0.2, 0.1, 0.0}, Family::Decreasing),
          FidelitySpec::tabular(T, {0.3, 0.1, 0.0}, Family::Decreasing)};
}

// A valid context for every registered policy.
PolicyContext context_for(const std::string& tag, std::size_t T, std::uint64_t seed) {
  using RM = RewardModel;
  if (tag == "fidelity_ucb")
    return make_ctx({FidelitySpec::tabular(T, {0.0, 0.2, 0.5}, Family::Increasing), FidelitySpec::zero(T)}, RM::LoyaltyPoints, T, seed);
  if (tag == "exp4_cover") return make_ctx(decreasing_specs(T), RM::LoyaltyPoints, T, seed);
  if (tag == "augmented_ucb" || tag == "augmented_exp3")
    return make_ctx({FidelitySpec::coupon(T, 2, 0.5), FidelitySpec::coupon(T, 3, 0.9)}, RM::LoyaltyPoints, T, seed);
  if (tag == "etc_best_arm")
    return make_ctx({FidelitySpec::tabular(T, {0.1, 0.4}, Family::Increasing), FidelitySpec::zero(T)}, RM::Subscription, T, seed);
  if (tag == "batch_exp3_mstep")
    return make_ctx({FidelitySpec::step(T, 1, Indexing::PriorCount), FidelitySpec::step(T, 1, Indexing::PriorCount)},
                    RM::Subscription, T, seed);
  if (tag == "etc_triple" || tag == "lazy_ewa") return make_ctx(decreasing_specs(T), RM::Subscription, T, seed);
  if (tag == "batch_ucb_coupons" || tag == "exp3_rhobar")
    return make_ctx({FidelitySpec::coupon(T, 2, 0.5), FidelitySpec::coupon(T, 3, 0.9)}, RM::Subscription, T, seed);
  return make_ctx({FidelitySpec::zero(T), FidelitySpec::zero(T)}, RM::LoyaltyPoints, T, seed);
}

}  // namespace

TEST(Ucb, InitialRoundVisitsArmsInOrder) {
  const std::size_t T = 50;
  auto ctx = make_ctx(SpecList(4, FidelitySpec::zero(T)), RewardModel::LoyaltyPoints, T);
  auto p = make_policy("baseline_ucb", ctx);
  const auto x = AdversarialInstance::constant(T, {0.1, 0.9, 0.5, 0.3});
  const auto tr = drive(*p, x, ctx.specs, ctx.model);
  for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(tr.arms[t], t);
}

TEST(Ucb, IndexArithmetic) {
  EXPECT_NEAR(ucb_index(0.5, 0.2, 8, 2, 100), 0.7 + std::sqrt(2.0 * std::log(200.0) / 8.0), 1e-12);
  EXPECT_NEAR(ucb_index(0.5, 0.2, 8, 2, 100), 1.851, 5e-4);
}

TEST(Ucb, TiesGoToLowestIndex) {
  const std::size_t T = 20;
  auto ctx = make_ctx(SpecList(3, FidelitySpec::zero(T)), RewardModel::LoyaltyPoints, T);
  auto p = make_policy("baseline_ucb", ctx);
  const auto x = AdversarialInstance::constant(T, {0.5, 0.5, 0.5});
  const auto tr = drive(*p, x, ctx.specs, ctx.model);
  EXPECT_EQ(tr.arms[3], 0u);
}

TEST(Ucb, FidelityOffsetIsAverageCumulative) {
  const std::size_t T = 40;
  auto ctx = context_for("fidelity_ucb", T, 1);
  auto p = make_policy("fidelity_ucb", ctx);
  auto& ucb = dynamic_cast<UcbPolicy&>(*p);
  drive(ucb, AdversarialInstance::constant(2, {0.3, 0.3}), ctx.specs, ctx.model);
  const double offset = cumulative_fidelity(ctx.specs[0], T) / T;
  EXPECT_NEAR(ucb.index(0) - ucb.index(1), offset, 1e-12);
}

TEST(Ucb, ZeroFidelityMatchesBaseline) {
  const std::size_t T = 500;
  auto ctx = make_ctx(SpecList(3, FidelitySpec::zero(T)), RewardModel::LoyaltyPoints, T, 5);
  const auto x = iid_as_adversarial(StochasticInstance({0.3, 0.5, 0.45}, Distribution::Bernoulli, 2), T);
  auto a = make_policy("fidelity_ucb", ctx);
  auto b = make_policy("baseline_ucb", ctx);
  EXPECT_EQ(drive(*a, x, ctx.specs, ctx.model).arms, drive(*b, x, ctx.specs, ctx.model).arms);
}

TEST(AugmentedUcb, CouponRateOffset) {
  const std::size_t T = 30;
  auto ctx = make_ctx({FidelitySpec::coupon(T, 5, 0.5), FidelitySpec::coupon(T, 1, 0.0)}, RewardModel::LoyaltyPoints, T);
  auto p = make_policy("augmented_ucb", ctx);
  auto& ucb = dynamic_cast<UcbPolicy&>(*p);
  drive(ucb, AdversarialInstance::constant(2, {0.4, 0.4}), ctx.specs, ctx.model);
  EXPECT_NEAR(ucb.index(0) - ucb.index(1), 0.1, 1e-12);
}

TEST(AugmentedUcb, UnitPeriodsMatchFidelityUcb) {
  const std::size_t T = 300;
  const SpecList coupons{FidelitySpec::coupon(T, 1, 0.25), FidelitySpec::coupon(T, 1, 0.125)};
  const auto x = iid_as_adversarial(StochasticInstance({0.5, 0.6}, Distribution::Bernoulli, 4), T);
  auto ctx = make_ctx(coupons, RewardModel::LoyaltyPoints, T, 3);
  auto a = make_policy("augmented_ucb", ctx);
  ctx.overrides.strict = false;
  auto b = make_policy("fidelity_ucb", ctx);
  EXPECT_EQ(drive(*a, x, coupons, ctx.model).arms, drive(*b, x, coupons, ctx.model).arms);
}

TEST(Exp4, ImportanceEstimate) {
  EXPECT_DOUBLE_EQ(importance_estimate(0.4, 0.8, true), 0.25);
  EXPECT_DOUBLE_EQ(importance_estimate(0.4, 0.8, false), 1.0);
}

TEST(Exp4, ImportanceEstimateUnbiased) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> q{0.6, 0.3, 0.1};
  const std::vector<double> x{0.2, 0.7, 0.9};
  const int n = 100000;
  std::vector<double> sum(3, 0.0), sq(3, 0.0);
  for (int s = 0; s < n; ++s) {
    const std::size_t drawn = sample_index(q, u(rng));
    for (std::size_t j = 0; j < 3; ++j) {
      const double v = importance_estimate(x[j], q[j], j == drawn);
      sum[j] += v;
      sq[j] += v * v;
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    const double mean = sum[j] / n;
    const double se = std::sqrt((sq[j] / n - mean * mean) / n);
    EXPECT_NEAR(mean, x[j], 3.0 * se + 1e-12);
  }
}

TEST(Exp4, PseudoLossBoundedBelow) {
  const std::size_t T = 100;
  auto ctx = context_for("exp4_cover", T, 2);
  Exp4CoverPolicy p(ctx);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PlayState st(2);
  for (std::size_t t = 0; t < T; ++t) {
    const auto q = *p.distribution();
    const std::size_t a = p.select(t);
    const double x = u(rng);
    for (std::size_t i = 0; i < p.grid().size(); ++i) {
      const auto pt = p.grid().point(i);
      double inner = 0.0;
      for (std::size_t j = 0; j < 2; ++j) inner += pt[j] * importance_estimate(x, q[j], j == a);
      EXPECT_LE(inner, 1.0 + 1e-12);
      EXPECT_GE((1.0 - inner) - p.h(i), -1.0 - 1e-12);
    }
    p.observe(t, a, x, advance(st, ctx.specs, ctx.model, a));
  }
}

TEST(Exp4, GridCoversSimplex) {
  std::mt19937_64 rng(9);
  std::exponential_distribution<double> e(1.0);
  for (std::size_t K : {2u, 3u, 4u}) {
    const std::size_t L = 12;
    SimplexGrid g(K, L);
    std::size_t expected = 1;
    for (std::size_t i = 1; i < K; ++i) expected = expected * (L + i) / i;
    EXPECT_EQ(g.size(), expected);
    for (int s = 0; s < 200; ++s) {
      std::vector<double> q(K);
      double z = 0.0;
      for (auto& v : q) z += (v = e(rng));
      for (auto& v : q) v /= z;
      EXPECT_LE(g.distance(q), static_cast<double>(K) / L + 1e-12);
    }
  }
}

TEST(Exp4, GridSizeGuard) { EXPECT_THROW(SimplexGrid(8, 400), std::length_error); }

TEST(Exp4, DefaultParameters) {
  const std::size_t T = 200;
  auto ctx = context_for("exp4_cover", T, 1);
  Exp4CoverPolicy p(ctx);
  const double eps = 3.0 / std::sqrt(400.0);
  EXPECT_NEAR(p.epsilon(), eps, 1e-12);
  EXPECT_NEAR(p.eta(), std::sqrt(std::log(1.0 / eps) / (2.0 * T)), 1e-12);
  EXPECT_EQ(p.grid().resolution(), static_cast<std::size_t>(std::ceil(2.0 / eps)));
}

TEST(Distributions, AreProbabilityVectors) {
  const std::size_t T = 120;
  for (const std::string tag : {"exp4_cover", "augmented_exp3", "baseline_exp3", "batch_exp3_mstep", "exp3_rhobar"}) {
    auto ctx = context_for(tag, T, 7);
    auto p = make_policy(tag, ctx);
    const auto x = iid_as_adversarial(StochasticInstance({0.4, 0.6}, Distribution::Bernoulli, 3), T);
    drive(*p, x, ctx.specs, ctx.model, [&](std::size_t, std::size_t) {
      const auto d = p->distribution();
      ASSERT_TRUE(d.has_value()) << tag;
      double s = 0.0;
      for (double v : *d) {
        EXPECT_GE(v, 0.0);
        s += v;
      }
      EXPECT_NEAR(s, 1.0, 1e-9) << tag;
    });
  }
}

TEST(Exp3, SingleArmAlwaysPlaysIt) {
  const std::size_t T = 50;
  auto ctx = make_ctx({FidelitySpec::coupon(T, 2, 0.5)}, RewardModel::LoyaltyPoints, T);
  auto p = make_policy("augmented_exp3", ctx);
  const auto tr = drive(*p, AdversarialInstance::constant(T, {0.3}), ctx.specs, ctx.model);
  for (auto a : tr.arms) EXPECT_EQ(a, 0u);
}

TEST(Exp3, EqualRewardsKeepUniformWeightsUnderSymmetricSpecs) {
  const std::size_t T = 200;
  auto ctx = make_ctx({FidelitySpec::coupon(T, 1, 0.2), FidelitySpec::coupon(T, 1, 0.2)}, RewardModel::LoyaltyPoints, T);
  double total = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    ctx.seed = s;
    auto p = make_policy("augmented_exp3", ctx);
    drive(*p, AdversarialInstance::constant(T, {0.5, 0.5}), ctx.specs, ctx.model);
    total += (*p->distribution())[0];
  }
  EXPECT_NEAR(total / seeds, 0.5, 0.05);
}

TEST(EtcBestArm, CommitsToClearWinnerAndStays) {
  const std::size_t T = 1000;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto ctx = make_ctx({FidelitySpec::tabular(T, {0.2}, Family::Increasing), FidelitySpec::tabular(T, {0.2}, Family::Increasing)},
                        RewardModel::Subscription, T, seed);
    ctx.overrides.t0 = 200;
    EtcBestArmPolicy p(ctx);
    const auto x = iid_as_adversarial(StochasticInstance({0.9, 0.1}, Distribution::Bernoulli, seed), T);
    const auto tr = drive(p, x, ctx.specs, ctx.model);
    ASSERT_TRUE(p.committed());
    EXPECT_EQ(*p.committed(), 0u);
    for (std::size_t t = 200; t < T; ++t) EXPECT_EQ(tr.arms[t], 0u);
  }
}

TEST(EtcBestArm, MinimalExplorationCommitsToEmpiricalArgmax) {
  const std::size_t T = 30;
  auto ctx = make_ctx({FidelitySpec::zero(T), FidelitySpec::zero(T), FidelitySpec::zero(T)}, RewardModel::Subscription, T);
  ctx.overrides.t0 = 3;
  EtcBestArmPolicy p(ctx);
  const auto tr = drive(p, AdversarialInstance::constant(T, {0.2, 0.7, 0.4}), ctx.specs, ctx.model);
  EXPECT_EQ((std::vector<std::size_t>(tr.arms.begin(), tr.arms.begin() + 3)), (std::vector<std::size_t>{0, 1, 2}));
  for (std::size_t t = 3; t < T; ++t) EXPECT_EQ(tr.arms[t], 1u);
}

TEST(EtcTriple, CommittedPhaseFollowsPattern) {
  const std::size_t T = 300;
  const SpecList specs{FidelitySpec::tabular(T, {0.5, 0.45, 0.1, 0.0}, Family::Decreasing),
                       FidelitySpec::tabular(T, {0.3, 0.0}, Family::Decreasing)};
  auto ctx = make_ctx(specs, RewardModel::Subscription, T);
  ctx.overrides.t0 = 2;
  EtcTriplePolicy p(ctx);
  const auto tr = drive(p, AdversarialInstance::constant(T, {0.5, 0.4}), specs, ctx.model);
  ASSERT_TRUE(p.committed());
  const auto c = *p.committed();
  // per-cycle averages: m=1 -> 0.85, m=2 -> 2.65/3, m=3 -> 0.8125; the greedy crossing point is also 2
  EXPECT_EQ(c.i, 0u);
  EXPECT_EQ(c.k, 1u);
  EXPECT_EQ(c.m, 2u);
  for (std::size_t t = 2; t < T; ++t) EXPECT_EQ(tr.arms[t], (t - 2) % 3 == 2 ? 1u : 0u);
}

TEST(EtcTriple, ConstantFidelityCommitsToSingleArm) {
  const std::size_t T = 2000;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto ctx = make_ctx({FidelitySpec::tabular(T, {0.3}, Family::Decreasing), FidelitySpec::tabular(T, {0.3}, Family::Decreasing)},
                        RewardModel::Subscription, T, seed);
    EtcTriplePolicy p(ctx);
    const auto x = iid_as_adversarial(StochasticInstance({0.9, 0.1}, Distribution::Bernoulli, seed), T);
    drive(p, x, ctx.specs, ctx.model);
    ASSERT_TRUE(p.committed());
    EXPECT_EQ(p.committed()->i, 0u);
    EXPECT_EQ(p.committed()->m, T);
  }
}

TEST(BatchExp3Mstep, ConstantWithinBatchesAndBatchCount) {
  const std::size_t T = 1000;
  auto ctx = context_for("batch_exp3_mstep", T, 4);
  BatchExp3MstepPolicy p(ctx);
  const std::size_t B = p.batch_length();
  EXPECT_EQ(B, BatchExp3MstepPolicy::default_batch(1, 2, T));
  EXPECT_EQ(p.batch_count(), (T + B - 1) / B);
  const auto x = iid_as_adversarial(StochasticInstance({0.4, 0.6}, Distribution::Bernoulli, 1), T);
  const auto tr = drive(p, x, ctx.specs, ctx.model);
  for (std::size_t t = 0; t < T; ++t) EXPECT_EQ(tr.arms[t], tr.arms[(t / B) * B]);
}

TEST(BatchExp3Mstep, PreconditionsEnforced) {
  const std::size_t T = 100;
  auto ctx = context_for("batch_exp3_mstep", T, 1);
  ctx.specs = {FidelitySpec::step(T, 1), FidelitySpec::step(T, 1)};
  EXPECT_THROW(BatchExp3MstepPolicy{ctx}, std::invalid_argument);
  ctx.specs = {FidelitySpec::step(T, T, Indexing::PriorCount), FidelitySpec::step(T, T, Indexing::PriorCount)};
  EXPECT_THROW(BatchExp3MstepPolicy{ctx}, std::invalid_argument);
  ctx.specs = {FidelitySpec::step(T, 2, Indexing::PriorCount), FidelitySpec::step(T, 3, Indexing::PriorCount)};
  EXPECT_THROW(BatchExp3MstepPolicy{ctx}, std::invalid_argument);
}

TEST(Exp3Rhobar, LcmBatchesAndCouponCounts) {
  const std::size_t T = 120;
  auto ctx = make_ctx({FidelitySpec::coupon(T, 2, 1.0), FidelitySpec::coupon(T, 3, 1.0)}, RewardModel::Subscription, T, 3);
  Exp3RhobarPolicy p(ctx);
  EXPECT_EQ(p.rhobar(), 6u);
  EXPECT_EQ(p.batch_count(), T / 6);
  const auto x = iid_as_adversarial(StochasticInstance({0.5, 0.5}, Distribution::Bernoulli, 2), T);
  const auto tr = drive(p, x, ctx.specs, ctx.model);
  for (std::size_t b = 0; b < T / 6; ++b) {
    double earned = 0.0;
    for (std::size_t t = 6 * b; t < 6 * b + 6; ++t) {
      EXPECT_EQ(tr.arms[t], tr.arms[6 * b]);
      earned += tr.fidelity[t];
    }
    EXPECT_DOUBLE_EQ(earned, tr.arms[6 * b] == 0 ? 3.0 : 2.0);
  }
}

TEST(Exp3Rhobar, DefaultLambda) {
  const double K = 3.0, T = 5000.0;
  EXPECT_NEAR(Exp3RhobarPolicy::default_lambda(4, 3, 5000),
              std::min(1.0, std::sqrt(4.0 * K * std::log(K) / ((std::exp(1.0) - 1.0) * T))), 1e-15);
  EXPECT_EQ(Exp3RhobarPolicy::default_lambda(1000, 3, 1100), 1.0);
}

TEST(Exp3Rhobar, PeriodMustBeBelowHorizon) {
  auto ctx = make_ctx({FidelitySpec::coupon(20, 4, 1.0), FidelitySpec::coupon(20, 5, 1.0)}, RewardModel::Subscription, 20);
  EXPECT_THROW(Exp3RhobarPolicy{ctx}, std::invalid_argument);
}

TEST(BatchUcbCoupons, RunsAreWholeBatches) {
  const std::size_t T = 3000;
  const SpecList specs{FidelitySpec::coupon(T, 3, 0.6), FidelitySpec::coupon(T, 5, 0.9), FidelitySpec::coupon(T, 2, 0.2)};
  auto ctx = make_ctx(specs, RewardModel::Subscription, T, 2);
  auto p = make_policy("batch_ucb_coupons", ctx);
  const auto x = iid_as_adversarial(StochasticInstance({0.5, 0.4, 0.3}, Distribution::Bernoulli, 6), T);
  const auto tr = drive(*p, x, specs, ctx.model);
  std::size_t start = 0;
  for (std::size_t t = 1; t <= T; ++t) {
    if (t < T && tr.arms[t] == tr.arms[start]) continue;
    const std::size_t len = t - start, arm = tr.arms[start];
    const double earned = std::accumulate(tr.fidelity.begin() + start, tr.fidelity.begin() + t, 0.0);
    if (t < T) {
      EXPECT_EQ(len % specs[arm].rho(), 0u);
    }
    EXPECT_NEAR(earned, static_cast<double>(len / specs[arm].rho()) * specs[arm].r(), 1e-12);
    start = t;
  }
}

TEST(BatchUcbCoupons, UnitPeriodsMatchAugmentedUcb) {
  const std::size_t T = 400;
  const SpecList specs{FidelitySpec::coupon(T, 1, 0.3), FidelitySpec::coupon(T, 1, 0.1)};
  const auto x = iid_as_adversarial(StochasticInstance({0.5, 0.6}, Distribution::Bernoulli, 8), T);
  auto ctx = make_ctx(specs, RewardModel::Subscription, T, 1);
  auto a = make_policy("batch_ucb_coupons", ctx);
  ctx.overrides.strict = false;
  auto b = make_policy("augmented_ucb", ctx);
  EXPECT_EQ(drive(*a, x, specs, ctx.model).arms, drive(*b, x, specs, ctx.model).arms);
}

TEST(LazyEwa, EstimatorIsUnbiased) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t K = 3;
  const double eps = 0.2, phi_v = 0.35;
  const std::vector<double> x{0.1, 0.8, 0.5};
  const std::size_t expert_arm = 1;
  const int n = 100000;
  double s = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const bool z = u(rng) < eps;
    const std::size_t arm = static_cast<std::size_t>(u(rng) * K) % K;
    const double v = lazy_estimate(z, arm == expert_arm, K, eps, x[arm], phi_v);
    s += v;
    sq += v * v;
  }
  const double mean = s / n, se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, x[expert_arm] + phi_v, 3.0 * se);
}

TEST(LazyEwa, LazinessInvariants) {
  const std::size_t T = 600;
  auto ctx = context_for("lazy_ewa", T, 11);
  ctx.overrides.epsilon = 0.2;
  LazyEwaPolicy p(ctx);
  const auto x = iid_as_adversarial(StochasticInstance({0.3, 0.6}, Distribution::Bernoulli, 2), T);
  std::optional<std::size_t> prev_expert;
  bool prev_z = false;
  std::vector<double> prev_loss(p.experts().size(), 0.0);
  PlayState st(2);
  std::size_t z_count = 0;
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t a = p.select(t);
    const bool z = p.explored_last();
    z_count += z;
    if (!z) {
      ASSERT_TRUE(p.current_expert());
      if (!prev_z && prev_expert) {
        EXPECT_EQ(*p.current_expert(), *prev_expert);
      }
      EXPECT_EQ(a, p.experts()[*p.current_expert()].arm_at(t, T));
      prev_expert = p.current_expert();
    }
    if (t == 0) {
      EXPECT_TRUE(z);
    }
    prev_z = z;
    p.observe(t, a, x(t, a), advance(st, ctx.specs, ctx.model, a));
    for (std::size_t e = 0; e < p.experts().size(); ++e) {
      const double inc = p.cumulative_loss(e) - prev_loss[e];
      EXPECT_GE(inc, -1e-12);
      if (!z || p.experts()[e].arm_at(t, T) != a) {
        EXPECT_EQ(inc, 0.0);
      }
      prev_loss[e] = p.cumulative_loss(e);
    }
  }
  EXPECT_EQ(p.explorations(), z_count);
  EXPECT_LE(p.redraws(), p.explorations());
}

TEST(LazyEwa, ExpertFamily) {
  const auto ex = periodic_experts(3, 10);
  EXPECT_EQ(ex.size(), 3u * (2u * 9u + 1u));
  EXPECT_TRUE(std::is_sorted(ex.begin(), ex.end()));
  for (const auto& e : ex) EXPECT_EQ(e.k == e.i, e.m == 10u);
}

TEST(LazyEwa, LargeExplorationRateIsClippedWithWarning) {
  const std::size_t T = 10;
  auto ctx = context_for("lazy_ewa", T, 1);
  LazyEwaPolicy p(ctx);
  if (ctx.arms * std::sqrt(LazyEwaPolicy::default_eta(2, T)) >= 1.0) {
    EXPECT_EQ(p.epsilon(), 0.5);
    EXPECT_FALSE(p.warnings().empty());
  } else {
    EXPECT_TRUE(p.warnings().empty());
  }
}

TEST(Contract, ObserveMustMatchSelect) {
  auto ctx = context_for("baseline_ucb", 20, 1);
  auto p = make_policy("baseline_ucb", ctx);
  const std::size_t a = p->select(0);
  EXPECT_THROW(p->observe(0, 1 - a, 0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(p->select(0), std::logic_error);
  p->observe(0, a, 0.5, 0.0);
  EXPECT_THROW(p->observe(1, a, 0.5, 0.0), std::logic_error);
  EXPECT_THROW(p->select(5), std::logic_error);
}

TEST(Contract, EveryPolicyIsDeterministicGivenSeed) {
  const std::size_t T = 150;
  for (const auto& tag : policy_tags()) {
    const auto x = iid_as_adversarial(StochasticInstance({0.45, 0.55}, Distribution::Bernoulli, 9), T);
    auto ctx = context_for(tag, T, 42);
    auto a = make_policy(tag, ctx);
    auto b = make_policy(tag, ctx);
    EXPECT_EQ(drive(*a, x, ctx.specs, ctx.model).arms, drive(*b, x, ctx.specs, ctx.model).arms) << tag;
    EXPECT_EQ(a->tag(), tag);
  }
}

TEST(Contract, ConstructionErrors) {
  const std::size_t T = 100;
  EXPECT_THROW(make_policy("no_such_policy", context_for("baseline_ucb", T, 1)), std::invalid_argument);

  auto loyalty_dec = context_for("exp4_cover", T, 1);
  EXPECT_THROW(make_policy("etc_triple", loyalty_dec), std::invalid_argument);
  EXPECT_THROW(make_policy("lazy_ewa", loyalty_dec), std::invalid_argument);
  EXPECT_THROW(make_policy("fidelity_ucb", loyalty_dec), std::invalid_argument);

  auto loyalty_inc = context_for("fidelity_ucb", T, 1);
  EXPECT_THROW(make_policy("exp4_cover", loyalty_inc), std::invalid_argument);
  EXPECT_THROW(make_policy("augmented_ucb", loyalty_inc), std::invalid_argument);

  auto sub = context_for("etc_triple", T, 1);
  sub.overrides.t0 = T;
  EXPECT_THROW(make_policy("etc_triple", sub), std::invalid_argument);
  sub.overrides.t0 = 1;
  EXPECT_THROW(make_policy("etc_triple", sub), std::invalid_argument);

  auto small = context_for("baseline_ucb", T, 1);
  small.horizon = 1;
  EXPECT_THROW(make_policy("baseline_ucb", small), std::invalid_argument);

  auto relaxed = context_for("fidelity_ucb", T, 1);
  relaxed.overrides.strict = false;
  EXPECT_NO_THROW(make_policy("exp4_cover", relaxed));
}

TEST(SampleIndex, InversionAndRounding) {
  const std::vector<double> p{0.2, 0.0, 0.8};
  EXPECT_EQ(sample_index(p, 0.0), 0u);
  EXPECT_EQ(sample_index(p, 0.19), 0u);
  EXPECT_EQ(sample_index(p, 0.2), 2u);
  EXPECT_EQ(sample_index(p, 1.0), 2u);
}

TEST(ExpWeightsTest, SoftmaxOfNegativeLosses) {
  ExpWeights w(3, 0.5);
  w.add_loss(0, 2.0);
  w.add_loss(2, -1.0);
  const auto p = w.probabilities();
  const double z = std::exp(-1.0) + 1.0 + std::exp(0.5);
  EXPECT_NEAR(p[0], std::exp(-1.0) / z, 1e-15);
  EXPECT_NEAR(p[1], 1.0 / z, 1e-15);
  EXPECT_NEAR(p[2], std::exp(0.5) / z, 1e-15);
  EXPECT_THROW(ExpWeights(0, 0.1), std::invalid_argument);
  EXPECT_THROW(ExpWeights(2, -0.1), std::invalid_argument);
}
