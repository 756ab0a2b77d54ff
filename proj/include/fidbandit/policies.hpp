#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fidbandit/core.hpp"
#include "fidbandit/oracles.hpp"
#include "fidbandit/policy.hpp"

namespace fidbandit {

namespace detail {

inline void require(bool ok, std::string_view tag, const std::string& what) {
  if (!ok) throw std::invalid_argument(std::string(tag) + ": " + what);
}

inline void require_model(const PolicyContext& ctx, std::string_view tag, RewardModel model) {
  if (ctx.overrides.strict)
    require(ctx.model == model, tag, "requires the " + std::string(to_string(model)) + " reward model");
}

inline std::size_t round_robin_t0(const PolicyContext& ctx, std::string_view tag, double scale) {
  const double T = static_cast<double>(ctx.horizon);
  const double K = static_cast<double>(ctx.arms);
  const std::size_t t0 = ctx.overrides.t0.value_or(static_cast<std::size_t>(
      std::ceil(scale * std::pow(T, 2.0 / 3.0) * std::cbrt(K * log_k_or_one(ctx.arms)))));
  require(t0 < ctx.horizon, tag,
          "exploration length t0 = " + std::to_string(t0) + " must be smaller than T = " + std::to_string(ctx.horizon));
  require(t0 >= ctx.arms, tag, "exploration length t0 must give every arm at least one sample");
  return t0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Upper-confidence-bound family.

/// mean + offset + sqrt(2 log(KT) / n)
inline double ucb_index(double mean, double offset, std::size_t n, std::size_t arms, std::size_t horizon) {
  return mean + offset +
         std::sqrt(2.0 * std::log(static_cast<double>(arms) * static_cast<double>(horizon)) / static_cast<double>(n));
}

/// UCB on base-reward means plus a fixed per-arm offset. Each arm is played
/// once in index order first. An optional batch length per arm makes every
/// decision commit to that many consecutive plays.
class UcbPolicy : public Policy {
 public:
  UcbPolicy(const PolicyContext& ctx, std::string tag, std::vector<double> offsets,
            std::vector<std::size_t> batch = {})
      : Policy(ctx), tag_(std::move(tag)), offsets_(std::move(offsets)), batch_(std::move(batch)),
        plays_(ctx.arms, 0), sums_(ctx.arms, 0.0) {
    if (batch_.empty()) batch_.assign(ctx.arms, 1);
  }

  std::string_view tag() const override { return tag_; }
  const std::vector<std::size_t>& plays() const { return plays_; }
  double mean(std::size_t j) const { return plays_[j] ? sums_[j] / static_cast<double>(plays_[j]) : 0.0; }
  double index(std::size_t j) const { return ucb_index(mean(j), offsets_[j], plays_[j], arms_, horizon_); }

 protected:
  std::size_t do_select(std::size_t) override {
    if (remaining_ > 0) {
      --remaining_;
      return current_;
    }
    current_ = choose();
    remaining_ = batch_[current_] - 1;
    return current_;
  }

  void do_observe(std::size_t, std::size_t arm, double base, double) override {
    ++plays_[arm];
    sums_[arm] += base;
  }

 private:
  std::size_t choose() const {
    for (std::size_t j = 0; j < arms_; ++j)
      if (plays_[j] == 0) return j;
    std::size_t best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < arms_; ++j) {
      const double v = index(j);
      if (v > best_index) {
        best_index = v;
        best = j;
      }
    }
    return best;
  }

  std::string tag_;
  std::vector<double> offsets_;
  std::vector<std::size_t> batch_;
  std::vector<std::size_t> plays_;
  std::vector<double> sums_;
  std::size_t current_ = 0;
  std::size_t remaining_ = 0;
};

// ---------------------------------------------------------------------------
// EXP3 over arms with importance-weighted losses and no uniform mixing.

class Exp3Policy : public Policy {
 public:
  using LossFn = std::function<double(std::size_t arm, double base, double fidelity)>;

  Exp3Policy(const PolicyContext& ctx, std::string tag, double eta, LossFn loss)
      : Policy(ctx), tag_(std::move(tag)), weights_(ctx.arms, eta), loss_(std::move(loss)) {}

  std::string_view tag() const override { return tag_; }
  std::optional<std::vector<double>> distribution() const override { return weights_.probabilities(); }
  const ExpWeights& weights() const { return weights_; }

 protected:
  std::size_t do_select(std::size_t) override {
    p_ = weights_.probabilities();
    return sample_index(p_, uniform01(rng_));
  }
  void do_observe(std::size_t, std::size_t arm, double base, double fidelity) override {
    weights_.add_loss(arm, loss_(arm, base, fidelity) / p_[arm]);
  }

 private:
  std::string tag_;
  ExpWeights weights_;
  LossFn loss_;
  std::vector<double> p_;
};

// ---------------------------------------------------------------------------
// EXP4 over a grid of simplex points with pseudo rewards.

/// X_hat = 1 - (1 - x) / q * 1{drawn}
inline double importance_estimate(double x, double q, bool drawn) { return drawn ? 1.0 - (1.0 - x) / q : 1.0; }

inline constexpr std::size_t kMaxGridSize = 2000000;

/// All points of the K-simplex whose coordinates are multiples of 1/L, in
/// decreasing lexicographic order of the numerators. Such a grid is a (K/L)-cover in l1.
class SimplexGrid {
 public:
  SimplexGrid(std::size_t arms, std::size_t resolution) : arms_(arms), resolution_(resolution) {
    if (arms == 0 || resolution == 0) throw std::invalid_argument("simplex grid needs K >= 1 and L >= 1");
    // size = C(L + K - 1, K - 1), guarded against overflow
    double count = 1.0;
    for (std::size_t i = 1; i < arms; ++i)
      count = count * static_cast<double>(resolution + i) / static_cast<double>(i);
    if (count > static_cast<double>(kMaxGridSize) + 0.5)
      throw std::length_error("simplex grid would have " + std::to_string(static_cast<long double>(count)) +
                              " points, above the limit of " + std::to_string(kMaxGridSize));
    std::vector<std::size_t> parts(arms, 0);
    build(parts, 0, resolution);
  }

  std::size_t size() const { return points_.size() / arms_; }
  std::size_t arms() const { return arms_; }
  std::size_t resolution() const { return resolution_; }
  std::span<const double> point(std::size_t i) const { return {points_.data() + i * arms_, arms_}; }

  /// l1 distance from q to its nearest grid point.
  double distance(std::span<const double> q) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < arms_; ++j) d += std::abs(point(i)[j] - q[j]);
      best = std::min(best, d);
    }
    return best;
  }

 private:
  void build(std::vector<std::size_t>& parts, std::size_t j, std::size_t left) {
    if (j + 1 == arms_) {
      parts[j] = left;
      for (std::size_t a = 0; a < arms_; ++a)
        points_.push_back(static_cast<double>(parts[a]) / static_cast<double>(resolution_));
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      parts[j] = v;
      build(parts, j + 1, left - v);
    }
  }

  std::size_t arms_;
  std::size_t resolution_;
  std::vector<double> points_;
};

class Exp4CoverPolicy : public Policy {
 public:
  explicit Exp4CoverPolicy(const PolicyContext& ctx)
      : Policy(ctx), epsilon_(default_epsilon(ctx)), grid_(ctx.arms, resolution(ctx.arms, epsilon_)),
        weights_(grid_.size(), ctx.overrides.eta.value_or(default_eta(ctx.horizon, epsilon_))) {
    detail::require_model(ctx, tag(), RewardModel::LoyaltyPoints);
    if (ctx.overrides.strict)
      detail::require(all_nonincreasing(ctx.specs), tag(), "requires nonincreasing fidelity for every arm");
    h_.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) h_[i] = h_extension(ctx.specs, ctx.horizon, grid_.point(i));
    q_.assign(ctx.arms, 0.0);
  }

  std::string_view tag() const override { return "exp4_cover"; }
  std::optional<std::vector<double>> distribution() const override { return mixture(); }

  double epsilon() const { return epsilon_; }
  double eta() const { return weights_.eta(); }
  const SimplexGrid& grid() const { return grid_; }
  const ExpWeights& weights() const { return weights_; }
  double h(std::size_t expert) const { return h_[expert]; }

  static double default_epsilon_for(std::size_t arms, std::size_t horizon) {
    return std::min(1.0, static_cast<double>(arms + 1) / std::sqrt(2.0 * static_cast<double>(horizon)));
  }
  static double default_eta(std::size_t horizon, double epsilon) {
    return std::sqrt(std::log(1.0 / epsilon) / (2.0 * static_cast<double>(horizon)));
  }
  static std::size_t resolution(std::size_t arms, double epsilon) {
    return static_cast<std::size_t>(std::ceil(static_cast<double>(arms) / epsilon - 1e-12));
  }

 protected:
  std::size_t do_select(std::size_t) override {
    q_ = mixture();
    return sample_index(q_, uniform01(rng_));
  }

  void do_observe(std::size_t, std::size_t arm, double base, double) override {
    // sum_j q_j (1 - X_hat_j) only involves the drawn arm
    const double scaled = (1.0 - importance_estimate(base, q_[arm], true));
    for (std::size_t i = 0; i < grid_.size(); ++i) weights_.add_loss(i, grid_.point(i)[arm] * scaled - h_[i]);
  }

 private:
  static double default_epsilon(const PolicyContext& ctx) {
    const double e = ctx.overrides.epsilon.value_or(default_epsilon_for(ctx.arms, ctx.horizon));
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("exp4_cover: epsilon must lie in (0, 1]");
    return e;
  }

  std::vector<double> mixture() const {
    const auto p = weights_.probabilities();
    std::vector<double> q(arms_, 0.0);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (p[i] == 0.0) continue;
      const auto pt = grid_.point(i);
      for (std::size_t j = 0; j < arms_; ++j) q[j] += p[i] * pt[j];
    }
    const double z = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& v : q) v /= z;
    return q;
  }

  double epsilon_;
  SimplexGrid grid_;
  ExpWeights weights_;
  std::vector<double> h_;
  std::vector<double> q_;
};

// ---------------------------------------------------------------------------
// Explore-then-commit variants.

class EtcBestArmPolicy : public Policy {
 public:
  explicit EtcBestArmPolicy(const PolicyContext& ctx)
      : Policy(ctx), t0_(detail::round_robin_t0(ctx, tag(), 1.0)), sums_(ctx.arms, 0.0), counts_(ctx.arms, 0) {
    detail::require_model(ctx, tag(), RewardModel::Subscription);
    if (ctx.overrides.strict)
      detail::require(all_nondecreasing(ctx.specs), tag(), "requires nondecreasing fidelity for every arm");
    for (const auto& s : ctx.specs) bonus_.push_back(cumulative_fidelity(s, ctx.horizon) / static_cast<double>(ctx.horizon));
  }

  std::string_view tag() const override { return "etc_best_arm"; }
  std::size_t t0() const { return t0_; }
  std::optional<std::size_t> committed() const { return committed_; }

 protected:
  std::size_t do_select(std::size_t t) override {
    if (t < t0_) return t % arms_;
    if (!committed_) {
      std::size_t best = 0;
      double best_v = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < arms_; ++j) {
        const double v = sums_[j] / static_cast<double>(counts_[j]) + bonus_[j];
        if (v > best_v) {
          best_v = v;
          best = j;
        }
      }
      committed_ = best;
    }
    return *committed_;
  }
  void do_observe(std::size_t t, std::size_t arm, double base, double) override {
    if (t >= t0_) return;
    sums_[arm] += base;
    ++counts_[arm];
  }

 private:
  std::size_t t0_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::vector<double> bonus_;
  std::optional<std::size_t> committed_;
};

class EtcTriplePolicy : public Policy {
 public:
  explicit EtcTriplePolicy(const PolicyContext& ctx)
      : Policy(ctx), specs_(ctx.specs), t0_(detail::round_robin_t0(ctx, tag(), 0.5)), sums_(ctx.arms, 0.0),
        counts_(ctx.arms, 0) {
    detail::require_model(ctx, tag(), RewardModel::Subscription);
    if (ctx.overrides.strict)
      detail::require(all_nonincreasing(ctx.specs), tag(), "requires nonincreasing fidelity for every arm");
  }

  std::string_view tag() const override { return "etc_triple"; }
  std::size_t t0() const { return t0_; }
  std::optional<TripleSpec> committed() const { return committed_; }

 protected:
  std::size_t do_select(std::size_t t) override {
    if (t < t0_) return t % arms_;
    if (!committed_) {
      std::vector<double> mu(arms_);
      for (std::size_t j = 0; j < arms_; ++j) mu[j] = sums_[j] / static_cast<double>(counts_[j]);
      committed_ = best_triple(mu, specs_, horizon_).triple;
    }
    return committed_->arm_at(t - t0_, horizon_);
  }
  void do_observe(std::size_t t, std::size_t arm, double base, double) override {
    if (t >= t0_) return;
    sums_[arm] += base;
    ++counts_[arm];
  }

 private:
  SpecList specs_;
  std::size_t t0_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::optional<TripleSpec> committed_;
};

// ---------------------------------------------------------------------------
// Batched EXP3 variants: one EXP3 decision per block of consecutive plays,
// fed back the block's normalized reward.

class BatchedExp3Policy : public Policy {
 public:
  std::optional<std::vector<double>> distribution() const override { return weights_.probabilities(); }
  std::size_t batch_length() const { return batch_; }
  std::size_t batch_count() const { return batches_; }
  const ExpWeights& weights() const { return weights_; }

 protected:
  // Blocks of length `batch`; only the first `batches` blocks update EXP3,
  // rounds after them replay the last choice. `scale(len)` normalizes the
  // summed reward of a block of `len` plays into [0, 1].
  BatchedExp3Policy(const PolicyContext& ctx, std::size_t batch, std::size_t batches, double eta,
                    std::function<double(std::size_t)> scale)
      : Policy(ctx), scale_(std::move(scale)), batch_(batch), batches_(batches), weights_(ctx.arms, eta) {}

  std::size_t do_select(std::size_t t) override {
    if (t == block_end_ && block_ < batches_) {
      p_ = weights_.probabilities();
      arm_ = sample_index(p_, uniform01(rng_));
      block_end_ = std::min(t + batch_, horizon_);
      acc_ = 0.0;
      len_ = 0;
      ++block_;
    }
    return arm_;
  }

  void do_observe(std::size_t t, std::size_t arm, double base, double fidelity) override {
    if (t >= block_end_) return;  // leftover rounds
    acc_ += base + fidelity;
    ++len_;
    if (t + 1 == block_end_) {
      const double reward = std::clamp(acc_ / scale_(len_), 0.0, 1.0);
      weights_.add_loss(arm, (1.0 - reward) / p_[arm]);
    }
  }

  std::function<double(std::size_t)> scale_;

 private:
  std::size_t batch_;
  std::size_t batches_;
  ExpWeights weights_;
  std::vector<double> p_;
  std::size_t arm_ = 0;
  std::size_t block_ = 0;
  std::size_t block_end_ = 0;
  double acc_ = 0.0;
  std::size_t len_ = 0;

};

class BatchExp3MstepPolicy : public BatchedExp3Policy {
 public:
  explicit BatchExp3MstepPolicy(const PolicyContext& ctx)
      : BatchExp3MstepPolicy(ctx, step_threshold(ctx)) {}

  std::string_view tag() const override { return "batch_exp3_mstep"; }
  std::size_t m() const { return m_; }

  static std::size_t default_batch(std::size_t m, std::size_t arms, std::size_t horizon) {
    const double T = static_cast<double>(horizon);
    const double K = static_cast<double>(arms);
    const auto b = static_cast<std::size_t>(
        std::ceil(std::pow(2.0 * static_cast<double>(m), 2.0 / 3.0) * std::cbrt(T / (K * log_k_or_one(arms)))));
    return std::clamp(b, m + 1, horizon);
  }

 private:
  BatchExp3MstepPolicy(const PolicyContext& ctx, std::size_t m)
      : BatchedExp3Policy(ctx, batch_for(ctx, m), blocks(ctx.horizon, batch_for(ctx, m)),
                          ctx.overrides.eta.value_or(eta_for(ctx.arms, blocks(ctx.horizon, batch_for(ctx, m)))),
                          [](std::size_t len) { return 2.0 * static_cast<double>(len); }),
        m_(m) {}

  static std::size_t step_threshold(const PolicyContext& ctx) {
    const bool steps = std::all_of(ctx.specs.begin(), ctx.specs.end(), [](const auto& s) { return s.family() == Family::Step; });
    std::size_t m = 1;
    if (steps)
      for (const auto& s : ctx.specs) m = std::max(m, s.m());
    if (ctx.overrides.strict) {
      detail::require_model(ctx, "batch_exp3_mstep", RewardModel::Subscription);
      detail::require(steps, "batch_exp3_mstep", "requires m-step fidelity for every arm");
      detail::require(std::all_of(ctx.specs.begin(), ctx.specs.end(), [&](const auto& s) { return s.m() == m; }),
                      "batch_exp3_mstep", "requires a common step threshold m");
      detail::require(std::all_of(ctx.specs.begin(), ctx.specs.end(),
                                  [](const auto& s) { return s.indexing() == Indexing::PriorCount; }),
                      "batch_exp3_mstep", "requires prior_count indexing");
    }
    detail::require(m < ctx.horizon, "batch_exp3_mstep",
                    "step threshold m = " + std::to_string(m) + " must be smaller than T; regret is linear otherwise");
    return m;
  }
  static std::size_t batch_for(const PolicyContext& ctx, std::size_t m) {
    const std::size_t b = ctx.overrides.batch.value_or(default_batch(m, ctx.arms, ctx.horizon));
    detail::require(b >= 1 && b <= ctx.horizon, "batch_exp3_mstep", "batch length must lie in [1, T]");
    return b;
  }
  static std::size_t blocks(std::size_t horizon, std::size_t batch) { return (horizon + batch - 1) / batch; }
  static double eta_for(std::size_t arms, std::size_t blocks) {
    return std::sqrt(2.0 * std::log(static_cast<double>(arms)) / (static_cast<double>(blocks) * static_cast<double>(arms)));
  }

  std::size_t m_;
};

class Exp3RhobarPolicy : public BatchedExp3Policy {
 public:
  explicit Exp3RhobarPolicy(const PolicyContext& ctx) : Exp3RhobarPolicy(ctx, period(ctx)) {}

  std::string_view tag() const override { return "exp3_rhobar"; }
  std::size_t rhobar() const { return batch_length(); }
  double lambda() const { return lambda_; }

  static double default_lambda(std::size_t rhobar, std::size_t arms, std::size_t horizon) {
    const double K = static_cast<double>(arms);
    return std::min(1.0, std::sqrt(static_cast<double>(rhobar) * K * std::log(K) /
                                   ((std::exp(1.0) - 1.0) * static_cast<double>(horizon))));
  }

 private:
  Exp3RhobarPolicy(const PolicyContext& ctx, std::size_t rhobar)
      : BatchedExp3Policy(ctx, rhobar, ctx.horizon / rhobar,
                          ctx.overrides.eta.value_or(lambda_for(ctx, rhobar) / static_cast<double>(ctx.arms)),
                          [rhobar](std::size_t) { return 2.0 * static_cast<double>(rhobar); }),
        lambda_(lambda_for(ctx, rhobar)) {}

  static std::size_t period(const PolicyContext& ctx) {
    detail::require_model(ctx, "exp3_rhobar", RewardModel::Subscription);
    if (ctx.overrides.strict) detail::require(all_coupon(ctx.specs), "exp3_rhobar", "requires coupon fidelity for every arm");
    const std::size_t rhobar = ctx.overrides.batch.value_or(lcm_of_periods(ctx.specs));
    detail::require(rhobar >= 1 && rhobar < ctx.horizon, "exp3_rhobar",
                    "lcm of coupon periods (" + std::to_string(rhobar) + ") must be smaller than T = " +
                        std::to_string(ctx.horizon) + "; drop the fidelity of arms with very long periods");
    return rhobar;
  }
  static double lambda_for(const PolicyContext& ctx, std::size_t rhobar) {
    return ctx.overrides.lambda.value_or(default_lambda(rhobar, ctx.arms, ctx.horizon));
  }

  double lambda_;
};

// ---------------------------------------------------------------------------
// Lazy exponentially weighted average over periodic sequences.

/// Y_hat = 2 - (K / eps) * z * match * (2 - x - phi)
inline double lazy_estimate(bool explored, bool match, std::size_t arms, double epsilon, double x, double phi_value) {
  return 2.0 - (explored && match ? static_cast<double>(arms) / epsilon * (2.0 - x - phi_value) : 0.0);
}

/// (i, k, m) with k != i and m < T, plus (i, i, T), in lexicographic order.
inline std::vector<TripleSpec> periodic_experts(std::size_t arms, std::size_t horizon) {
  std::vector<TripleSpec> out;
  out.reserve(arms * ((arms - 1) * (horizon - 1) + 1));
  for (std::size_t i = 0; i < arms; ++i)
    for (std::size_t k = 0; k < arms; ++k) {
      if (k == i) {
        out.push_back({i, i, horizon});
        continue;
      }
      for (std::size_t m = 1; m < horizon; ++m) out.push_back({i, k, m});
    }
  return out;
}

class LazyEwaPolicy : public Policy {
 public:
  explicit LazyEwaPolicy(const PolicyContext& ctx)
      : Policy(ctx), experts_(periodic_experts(ctx.arms, ctx.horizon)),
        eta_(ctx.overrides.eta.value_or(default_eta(ctx.arms, ctx.horizon))), loss_(experts_.size(), 0.0) {
    detail::require_model(ctx, tag(), RewardModel::Subscription);
    if (ctx.overrides.strict)
      detail::require(all_nonincreasing(ctx.specs), tag(), "requires nonincreasing fidelity for every arm");
    epsilon_ = ctx.overrides.epsilon.value_or(static_cast<double>(ctx.arms) * std::sqrt(eta_));
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("lazy_ewa: epsilon must be positive");
    if (epsilon_ >= 1.0) {
      warn("exploration rate " + std::to_string(epsilon_) + " >= 1 for this horizon; clipped to 0.5");
      epsilon_ = 0.5;
    }
    phi_.resize(experts_.size());
    for (std::size_t e = 0; e < experts_.size(); ++e)
      phi_[e] = phi(experts_[e].i, experts_[e].k, experts_[e].m, ctx.specs, ctx.horizon);
  }

  std::string_view tag() const override { return "lazy_ewa"; }

  static double default_eta(std::size_t arms, std::size_t horizon) {
    const double K = static_cast<double>(arms);
    const double T = static_cast<double>(horizon);
    const double log_n = std::log(std::max(K * K * (T - 1.0), 2.0));
    return std::pow(log_n / (2.0 * T * K), 2.0 / 3.0);
  }

  double eta() const { return eta_; }
  double epsilon() const { return epsilon_; }
  const std::vector<TripleSpec>& experts() const { return experts_; }
  double phi_of(std::size_t expert) const { return phi_[expert]; }
  double cumulative_loss(std::size_t expert) const { return loss_[expert]; }
  std::optional<std::size_t> current_expert() const { return current_; }
  bool explored_last() const { return last_z_; }
  std::size_t explorations() const { return explorations_; }
  std::size_t redraws() const { return redraws_; }

  /// Expert sampling law, proportional to exp(-eta * cumulative loss).
  std::vector<double> expert_distribution() const {
    const double low = *std::min_element(loss_.begin(), loss_.end());
    std::vector<double> p(loss_.size());
    double z = 0.0;
    for (std::size_t e = 0; e < p.size(); ++e) z += p[e] = std::exp(-eta_ * (loss_[e] - low));
    for (double& v : p) v /= z;
    return p;
  }

 protected:
  std::size_t do_select(std::size_t t) override {
    const bool z = t == 0 || uniform01(rng_) < epsilon_;
    const bool previous = last_z_;
    last_z_ = z;
    if (z) {
      ++explorations_;
      return static_cast<std::size_t>(uniform01(rng_) * static_cast<double>(arms_)) % arms_;
    }
    if (previous || !current_) {
      current_ = sample_index(expert_distribution(), uniform01(rng_));
      ++redraws_;
    }
    return experts_[*current_].arm_at(t, horizon_);
  }

  void do_observe(std::size_t t, std::size_t arm, double base, double) override {
    if (!last_z_) return;
    // experts that disagree with the drawn arm have Y_hat = 2, i.e. zero loss
    for (std::size_t e = 0; e < experts_.size(); ++e)
      if (experts_[e].arm_at(t, horizon_) == arm)
        loss_[e] += 2.0 - lazy_estimate(true, true, arms_, epsilon_, base, phi_[e]);
  }

 private:
  std::vector<TripleSpec> experts_;
  double eta_;
  double epsilon_ = 0.0;
  std::vector<double> loss_;
  std::vector<double> phi_;
  std::optional<std::size_t> current_;
  bool last_z_ = false;
  std::size_t explorations_ = 0;
  std::size_t redraws_ = 0;
};

// ---------------------------------------------------------------------------
// Registry.

inline const std::vector<std::string>& policy_tags() {
  static const std::vector<std::string> tags = {
      "fidelity_ucb", "exp4_cover",  "augmented_ucb", "augmented_exp3",    "etc_best_arm", "batch_exp3_mstep",
      "etc_triple",   "lazy_ewa",    "batch_ucb_coupons", "exp3_rhobar", "baseline_exp3", "baseline_ucb"};
  return tags;
}

namespace detail {

inline std::vector<double> coupon_rates(const PolicyContext& ctx, std::string_view tag) {
  if (ctx.overrides.strict) require(all_coupon(ctx.specs), tag, "requires coupon fidelity for every arm");
  std::vector<double> rates;
  for (const auto& s : ctx.specs) rates.push_back(s.rate());
  return rates;
}

inline double arm_exp3_eta(const PolicyContext& ctx) {
  const double K = static_cast<double>(ctx.arms);
  return ctx.overrides.eta.value_or(std::sqrt(2.0 * std::log(K) / (static_cast<double>(ctx.horizon) * K)));
}

}  // namespace detail

inline std::unique_ptr<Policy> make_policy(std::string_view tag, const PolicyContext& ctx) {
  using detail::require;
  using detail::require_model;
  if (tag == "fidelity_ucb") {
    require_model(ctx, tag, RewardModel::LoyaltyPoints);
    if (ctx.overrides.strict) require(all_nondecreasing(ctx.specs), tag, "requires nondecreasing fidelity for every arm");
    std::vector<double> offsets;
    for (const auto& s : ctx.specs) offsets.push_back(cumulative_fidelity(s, ctx.horizon) / static_cast<double>(ctx.horizon));
    return std::make_unique<UcbPolicy>(ctx, std::string(tag), std::move(offsets));
  }
  if (tag == "augmented_ucb") {
    require_model(ctx, tag, RewardModel::LoyaltyPoints);
    return std::make_unique<UcbPolicy>(ctx, std::string(tag), detail::coupon_rates(ctx, tag));
  }
  if (tag == "baseline_ucb") return std::make_unique<UcbPolicy>(ctx, std::string(tag), std::vector<double>(ctx.arms, 0.0));
  if (tag == "batch_ucb_coupons") {
    require_model(ctx, tag, RewardModel::Subscription);
    auto rates = detail::coupon_rates(ctx, tag);
    std::vector<std::size_t> batch;
    for (const auto& s : ctx.specs) batch.push_back(s.family() == Family::Coupon ? s.rho() : 1);
    return std::make_unique<UcbPolicy>(ctx, std::string(tag), std::move(rates), std::move(batch));
  }
  if (tag == "augmented_exp3") {
    require_model(ctx, tag, RewardModel::LoyaltyPoints);
    auto rates = detail::coupon_rates(ctx, tag);
    return std::make_unique<Exp3Policy>(ctx, std::string(tag), detail::arm_exp3_eta(ctx),
                                        [rates](std::size_t arm, double x, double) { return (2.0 - (x + rates[arm])) / 2.0; });
  }
  if (tag == "baseline_exp3")
    return std::make_unique<Exp3Policy>(ctx, std::string(tag), detail::arm_exp3_eta(ctx),
                                        [](std::size_t, double x, double) { return 1.0 - x; });
  if (tag == "exp4_cover") return std::make_unique<Exp4CoverPolicy>(ctx);
  if (tag == "etc_best_arm") return std::make_unique<EtcBestArmPolicy>(ctx);
  if (tag == "batch_exp3_mstep") return std::make_unique<BatchExp3MstepPolicy>(ctx);
  if (tag == "etc_triple") return std::make_unique<EtcTriplePolicy>(ctx);
  if (tag == "lazy_ewa") return std::make_unique<LazyEwaPolicy>(ctx);
  if (tag == "exp3_rhobar") return std::make_unique<Exp3RhobarPolicy>(ctx);
  throw std::invalid_argument("unknown policy '" + std::string(tag) + "'");
}

}  // namespace fidbandit
