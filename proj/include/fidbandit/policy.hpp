#pragma once

// Common policy contract and the exponential-weights machinery shared by the
// EXP3 / EXP4 / lazy variants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fidbandit/core.hpp"
#include "fidbandit/random.hpp"

namespace fidbandit {

struct PolicyOverrides {
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::optional<double> lambda;
  std::optional<std::size_t> t0;
  std::optional<std::size_t> batch;
  // When false, family preconditions are not enforced and the policy falls
  // back to the closest meaningful parameterization.
  bool strict = true;
};

struct PolicyContext {
  std::size_t arms = 0;
  std::size_t horizon = 0;
  SpecList specs;
  RewardModel model = RewardModel::LoyaltyPoints;
  std::uint64_t seed = 0;
  PolicyOverrides overrides;
};

class Policy {
 public:
  explicit Policy(const PolicyContext& ctx) : arms_(ctx.arms), horizon_(ctx.horizon), rng_(ctx.seed) {
    if (ctx.arms == 0) throw std::invalid_argument("policy needs at least one arm");
    if (ctx.horizon < ctx.arms) throw std::invalid_argument("horizon T must be at least K");
    if (ctx.specs.size() != ctx.arms) throw std::invalid_argument("one fidelity spec per arm required");
  }
  virtual ~Policy() = default;
  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  virtual std::string_view tag() const = 0;

  /// Arm to play in round t (0-based). Rounds must be visited in order.
  std::size_t select(std::size_t t) {
    if (pending_) throw std::logic_error(std::string(tag()) + ": select called twice without observe");
    if (t != next_round_)
      throw std::logic_error(std::string(tag()) + ": expected round " + std::to_string(next_round_) +
                             ", got " + std::to_string(t));
    const std::size_t arm = do_select(t);
    if (arm >= arms_) throw std::logic_error(std::string(tag()) + ": selected arm out of range");
    pending_ = arm;
    return arm;
  }

  /// Feedback for the arm returned by the preceding select(t).
  void observe(std::size_t t, std::size_t arm, double base, double fidelity) {
    if (!pending_ || t != next_round_)
      throw std::logic_error(std::string(tag()) + ": observe without a matching select");
    if (arm != *pending_)
      throw std::invalid_argument(std::string(tag()) + ": observed arm " + std::to_string(arm) +
                                  " but selected arm " + std::to_string(*pending_));
    pending_.reset();
    ++next_round_;
    do_observe(t, arm, base, fidelity);
  }

  /// Current sampling distribution over arms, for randomized policies.
  virtual std::optional<std::vector<double>> distribution() const { return std::nullopt; }

  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t arms() const { return arms_; }
  std::size_t horizon() const { return horizon_; }

 protected:
  virtual std::size_t do_select(std::size_t t) = 0;
  virtual void do_observe(std::size_t t, std::size_t arm, double base, double fidelity) = 0;

  void warn(std::string msg) { warnings_.push_back(std::string(tag()) + ": " + std::move(msg)); }

  std::size_t arms_;
  std::size_t horizon_;
  Rng rng_;

 private:
  std::optional<std::size_t> pending_;
  std::size_t next_round_ = 0;
  std::vector<std::string> warnings_;
};

/// Index drawn from a probability vector by inversion; falls back to the last
/// positive entry on rounding.
inline std::size_t sample_index(std::span<const double> p, double u) {
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    acc += p[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

/// Exponential weights over n items stored as log-weights -eta * L_i.
class ExpWeights {
 public:
  ExpWeights(std::size_t n, double eta) : log_w_(n, 0.0), eta_(eta) {
    if (n == 0) throw std::invalid_argument("exponential weights over an empty set");
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("learning rate must be finite and >= 0");
  }

  std::size_t size() const { return log_w_.size(); }
  double eta() const { return eta_; }

  /// Adds `loss` to the cumulative loss of item i.
  void add_loss(std::size_t i, double loss) { log_w_[i] -= eta_ * loss; }

  /// Max-shifted softmax of the log-weights.
  std::vector<double> probabilities() const {
    const double top = *std::max_element(log_w_.begin(), log_w_.end());
    std::vector<double> p(log_w_.size());
    double z = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) z += p[i] = std::exp(log_w_[i] - top);
    for (double& v : p) v /= z;
    return p;
  }

  std::span<const double> log_weights() const { return log_w_; }

 private:
  std::vector<double> log_w_;
  double eta_;
};

inline double log_k_or_one(std::size_t k) { return k > 1 ? std::log(static_cast<double>(k)) : 1.0; }

}  // namespace fidbandit
