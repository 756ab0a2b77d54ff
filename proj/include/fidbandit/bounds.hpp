#pragma once

// Closed-form regret guarantees, evaluated exactly as stated for each setting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fidbandit/core.hpp"
#include "fidbandit/oracles.hpp"

namespace fidbandit {

struct BoundInputs {
  std::size_t arms = 0;
  std::size_t horizon = 0;
  std::vector<double> means;  // needed by the gap-dependent bounds
  SpecList specs;
  std::optional<double> delta;            // lower-bound amplitude
  std::optional<std::size_t> grid_size;   // number of cover points actually used
};

namespace bounds {

inline double dbl(std::size_t v) { return static_cast<double>(v); }

/// Gaps of mu_j + F_j(T)/T to the best arm, and the best arm itself.
inline std::pair<std::vector<double>, std::size_t> fidelity_gaps(const std::vector<double>& mu, const SpecList& specs,
                                                                 std::size_t horizon) {
  std::vector<double> score(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) score[j] = mu[j] + cumulative_fidelity(specs[j], horizon) / dbl(horizon);
  const auto best = static_cast<std::size_t>(std::max_element(score.begin(), score.end()) - score.begin());
  std::vector<double> gaps(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) gaps[j] = score[best] - score[j];
  return {gaps, best};
}

/// Gaps of the coupon-augmented means mu_j + r_j/rho_j.
inline std::vector<double> coupon_gaps(const std::vector<double>& mu, const SpecList& specs) {
  std::vector<double> score(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) score[j] = mu[j] + specs[j].rate();
  const double top = *std::max_element(score.begin(), score.end());
  std::vector<double> gaps(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) gaps[j] = top - score[j];
  return gaps;
}

// Arms tied with the best contribute nothing.
inline constexpr double kGapFloor = 1e-12;

inline double ucb_loyalty_increasing(const std::vector<double>& mu, const SpecList& specs, std::size_t horizon) {
  const auto [gaps, best] = fidelity_gaps(mu, specs, horizon);
  const double K = dbl(mu.size());
  double total = 1.0 / K;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (j == best || gaps[j] <= kGapFloor) continue;
    const double spread = mu[best] - mu[j] + fidelity_at(specs[best], horizon);  // f_j(0) = 0
    total += 16.0 * std::log(dbl(horizon) * K) / (gaps[j] * gaps[j]) * spread;
  }
  return total;
}

inline double lower_bound(std::size_t horizon, double delta) { return dbl(horizon) * delta / 40.0; }

inline double exp4_printed(std::size_t arms, std::size_t horizon) {
  const double K1 = dbl(arms + 1);
  const double root = std::sqrt(2.0 * dbl(horizon));
  return K1 * root * (0.5 * std::sqrt(std::log(K1)) + 1.0 + std::sqrt(std::max(0.0, std::log(root / K1))));
}

/// The same guarantee with log M for the actual number of cover points M
/// instead of the minimal-cover estimate M <= eps^-(K-1).
inline double exp4_with_grid(std::size_t arms, std::size_t horizon, std::size_t grid_size) {
  const double T = dbl(horizon);
  const double K1 = dbl(arms + 1);
  const double eps = std::min(1.0, K1 / std::sqrt(2.0 * T));
  const double eta = std::sqrt(std::log(1.0 / eps) / (2.0 * T));
  const double log_m = std::log(dbl(std::max<std::size_t>(grid_size, 1)));
  const double learning = eta > 0.0 ? log_m / eta + 2.0 * K1 * eta * T : 0.0;
  return 2.0 * T * eps + learning + K1 * std::sqrt(T * std::log(K1) / 2.0);
}

inline double ucb_loyalty_coupon(const std::vector<double>& mu, const SpecList& specs, std::size_t horizon) {
  double total = 4.0 * dbl(mu.size());
  for (double g : coupon_gaps(mu, specs))
    if (g > kGapFloor) total += 16.0 * std::log(dbl(horizon)) / g;
  return total;
}

inline double exp3_loyalty_coupon(std::size_t arms, std::size_t horizon) {
  const double K = dbl(arms);
  return 4.0 * std::sqrt(dbl(horizon) * K * std::log(K)) + K;
}

inline double etc_subscription_decreasing(std::size_t arms, std::size_t horizon) {
  const double K = dbl(arms);
  return 3.0 * std::pow(dbl(horizon), 2.0 / 3.0) * std::cbrt(K * std::log(K));
}

inline double lazy_subscription_decreasing(std::size_t arms, std::size_t horizon) {
  const double K = dbl(arms);
  const double T = dbl(horizon);
  return 3.0 * std::pow(2.0 * T * K, 2.0 / 3.0) * std::cbrt(std::log(K * K * (T - 1.0)));
}

inline double batch_ucb_subscription_coupon(const std::vector<double>& mu, const SpecList& specs,
                                            std::size_t horizon) {
  const auto gaps = coupon_gaps(mu, specs);
  const double K = dbl(mu.size());
  double total = 2.0 * dbl(lcm_of_periods(specs));
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (gaps[j] <= kGapFloor) continue;
    total += 16.0 * std::log(dbl(horizon) * K) / gaps[j] + dbl(specs[j].rho()) * gaps[j] + (1.0 + 2.0 / K) * gaps[j];
  }
  return total;
}

/// Per-arm bound on the expected play count of each suboptimal arm under
/// batched UCB with coupons; optimal arms get no bound (nullopt).
inline std::vector<std::optional<double>> batch_ucb_play_counts(const std::vector<double>& mu, const SpecList& specs,
                                                                std::size_t horizon) {
  const auto gaps = coupon_gaps(mu, specs);
  const double K = dbl(mu.size());
  std::vector<std::optional<double>> out(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j)
    if (gaps[j] > kGapFloor)
      out[j] = 16.0 * std::log(dbl(horizon) * K) / (gaps[j] * gaps[j]) + dbl(specs[j].rho()) + 1.0 + 2.0 / K;
  return out;
}

/// f(7T/8) - f(T/8) of the first arm's fidelity.
inline double fidelity_spread(const FidelitySpec& spec, std::size_t horizon) {
  const auto at = [&](double x) {
    const auto n = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(x)), 1, horizon);
    return fidelity_at(spec, n);
  };
  return at(7.0 * dbl(horizon) / 8.0) - at(dbl(horizon) / 8.0);
}

}  // namespace bounds

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"2", "3", "4", "4_grid", "5", "6", "6_strong", "10", "11", "12"};
  return ids;
}

/// One-line description of what a theorem id evaluates.
inline std::string theorem_description(std::string_view id) {
  if (id == "2") return "UCB, stochastic loyalty, increasing fidelity (pseudo-regret)";
  if (id == "3") return "lower bound T*delta/40, adversarial increasing fidelity";
  if (id == "4") return "EXP4 cover, adversarial loyalty, nonincreasing fidelity (mean regret)";
  if (id == "4_grid") return "EXP4 cover bound using log of the actual cover size";
  if (id == "5") return "UCB on augmented rewards, stochastic loyalty coupons";
  if (id == "6") return "EXP3 on augmented rewards, adversarial loyalty coupons (weak and mean regret)";
  if (id == "6_strong") return "EXP3 on augmented rewards, adversarial loyalty coupons (strong regret)";
  if (id == "10") return "explore-then-commit on periodic sequences, stochastic subscription, decreasing fidelity";
  if (id == "11") return "lazy exponential weights, adversarial subscription, nonincreasing fidelity";
  if (id == "12") return "batched UCB, stochastic subscription coupons";
  throw std::invalid_argument("unknown theorem id '" + std::string(id) + "'");
}

inline double bound_value(std::string_view id, const BoundInputs& in) {
  theorem_description(id);  // validates the id
  if (in.arms == 0 || in.horizon == 0) throw std::invalid_argument("bound_value: K and T must be positive");
  auto need_means = [&] {
    if (in.means.size() != in.arms || in.specs.size() != in.arms)
      throw std::invalid_argument("theorem " + std::string(id) + " needs arm means and one fidelity spec per arm");
  };
  if (id == "2") {
    need_means();
    return bounds::ucb_loyalty_increasing(in.means, in.specs, in.horizon);
  }
  if (id == "3") {
    if (in.delta) return bounds::lower_bound(in.horizon, *in.delta);
    if (in.specs.empty()) throw std::invalid_argument("theorem 3 needs delta or a fidelity spec");
    return bounds::lower_bound(in.horizon, bounds::fidelity_spread(in.specs.front(), in.horizon));
  }
  if (id == "4") return bounds::exp4_printed(in.arms, in.horizon);
  if (id == "4_grid") {
    if (!in.grid_size) throw std::invalid_argument("theorem 4_grid needs the cover size");
    return bounds::exp4_with_grid(in.arms, in.horizon, *in.grid_size);
  }
  if (id == "5") {
    need_means();
    return bounds::ucb_loyalty_coupon(in.means, in.specs, in.horizon);
  }
  if (id == "6") return bounds::exp3_loyalty_coupon(in.arms, in.horizon);
  if (id == "6_strong") {
    if (in.specs.size() != in.arms) throw std::invalid_argument("theorem 6_strong needs one fidelity spec per arm");
    return bounds::exp3_loyalty_coupon(in.arms, in.horizon) + static_cast<double>(lcm_of_periods(in.specs));
  }
  if (id == "10") return bounds::etc_subscription_decreasing(in.arms, in.horizon);
  if (id == "11") return bounds::lazy_subscription_decreasing(in.arms, in.horizon);
  need_means();
  return bounds::batch_ucb_subscription_coupon(in.means, in.specs, in.horizon);
}

/// Theorem matched to each policy, if its guarantee has explicit constants.
inline std::optional<std::string> theorem_for_policy(std::string_view tag) {
  if (tag == "fidelity_ucb") return "2";
  if (tag == "exp4_cover") return "4_grid";
  if (tag == "augmented_ucb") return "5";
  if (tag == "augmented_exp3") return "6";
  if (tag == "etc_triple") return "10";
  if (tag == "lazy_ewa") return "11";
  if (tag == "batch_ucb_coupons") return "12";
  return std::nullopt;
}

}  // namespace fidbandit
