#pragma once

// Fidelity functions, per-arm play/run counters and reward composition.
//
// Conventions used throughout the library:
//   * arms are 0-based indices in [0, K)
//   * rounds are 0-based in [0, T)
//   * play counts are 1-based: f(n) is the fidelity attached to the n-th
//     counted play, n in [1, T]

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fidbandit {

enum class Family { Increasing, Decreasing, Coupon, Step, Tabular };

// Which counter value selects the fidelity of the current play.
//   CurrentCount: the k-th play earns f(k)      (totals agree with F(n))
//   PriorCount:   the k-th play earns f(k - 1)  (f(0) == 0; switching-cost form)
enum class Indexing { CurrentCount, PriorCount };

enum class RewardModel { LoyaltyPoints, Subscription };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::Increasing: return "increasing";
    case Family::Decreasing: return "decreasing";
    case Family::Coupon: return "coupon";
    case Family::Step: return "step";
    case Family::Tabular: return "tabular";
  }
  return "?";
}

inline std::string_view to_string(Indexing i) {
  return i == Indexing::CurrentCount ? "current_count" : "prior_count";
}

inline std::string_view to_string(RewardModel m) {
  return m == RewardModel::LoyaltyPoints ? "loyalty" : "subscription";
}

inline Family parse_family(std::string_view s) {
  if (s == "increasing") return Family::Increasing;
  if (s == "decreasing") return Family::Decreasing;
  if (s == "coupon") return Family::Coupon;
  if (s == "step") return Family::Step;
  if (s == "tabular") return Family::Tabular;
  throw std::invalid_argument("unknown fidelity family '" + std::string(s) + "'");
}

inline Indexing parse_indexing(std::string_view s) {
  if (s == "current_count") return Indexing::CurrentCount;
  if (s == "prior_count") return Indexing::PriorCount;
  throw std::invalid_argument("unknown indexing '" + std::string(s) + "'");
}

inline RewardModel parse_model(std::string_view s) {
  if (s == "loyalty" || s == "loyalty_points") return RewardModel::LoyaltyPoints;
  if (s == "subscription") return RewardModel::Subscription;
  throw std::invalid_argument("unknown reward model '" + std::string(s) + "'");
}

/// One arm's fidelity function, tabulated over play counts 1..T.
///
/// The table and its prefix sums are built once at construction and the
/// object is immutable afterwards, so it may be shared freely between
/// concurrent replications.
class FidelitySpec {
 public:
  /// Tabular spec. `values` shorter than T is extended by repeating its last
  /// entry; an empty list means zero fidelity. Monotone families are checked.
  static FidelitySpec tabular(std::size_t horizon, std::vector<double> values,
                              Family family = Family::Tabular,
                              Indexing indexing = Indexing::CurrentCount) {
    if (family == Family::Coupon || family == Family::Step)
      throw std::invalid_argument("use FidelitySpec::coupon / FidelitySpec::step");
    if (values.size() > horizon)
      throw std::invalid_argument("fidelity table longer than the horizon");
    const double fill = values.empty() ? 0.0 : values.back();
    values.resize(horizon, fill);
    FidelitySpec spec(family, std::move(values), indexing);
    if (family == Family::Increasing && !spec.nondecreasing())
      throw std::invalid_argument("increasing fidelity table is not nondecreasing");
    if (family == Family::Decreasing && !spec.nonincreasing())
      throw std::invalid_argument("decreasing fidelity table is not nonincreasing");
    return spec;
  }

  static FidelitySpec zero(std::size_t horizon, Indexing indexing = Indexing::CurrentCount) {
    return tabular(horizon, {}, Family::Tabular, indexing);
  }

  /// f(n) = r * 1{n = 0 mod rho}
  static FidelitySpec coupon(std::size_t horizon, std::size_t rho, double r,
                             Indexing indexing = Indexing::CurrentCount) {
    if (rho == 0) throw std::invalid_argument("coupon period rho must be positive");
    std::vector<double> v(horizon);
    for (std::size_t n = 1; n <= horizon; ++n) v[n - 1] = (n % rho == 0) ? r : 0.0;
    FidelitySpec spec(Family::Coupon, std::move(v), indexing);
    spec.rho_ = rho;
    spec.r_ = r;
    return spec;
  }

  /// f(n) = 1{n >= m}
  static FidelitySpec step(std::size_t horizon, std::size_t m,
                           Indexing indexing = Indexing::CurrentCount) {
    if (m == 0) throw std::invalid_argument("step threshold m must be positive");
    std::vector<double> v(horizon);
    for (std::size_t n = 1; n <= horizon; ++n) v[n - 1] = n >= m ? 1.0 : 0.0;
    FidelitySpec spec(Family::Step, std::move(v), indexing);
    spec.m_ = m;
    return spec;
  }

  Family family() const { return family_; }
  Indexing indexing() const { return indexing_; }
  std::size_t horizon() const { return values_.size(); }
  std::size_t rho() const { return rho_; }
  double r() const { return r_; }
  std::size_t m() const { return m_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> prefix() const { return prefix_; }

  bool nondecreasing() const {
    return std::is_sorted(values_.begin(), values_.end());
  }
  bool nonincreasing() const {
    return std::is_sorted(values_.begin(), values_.end(), std::greater<>());
  }
  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
  }
  double max_value() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
  }

  /// Average fidelity per play of the coupon schedule, r/rho. Other
  /// families report F(T)/T, which is the same quantity up to the last
  /// incomplete period.
  double rate() const {
    if (family_ == Family::Coupon) return r_ / static_cast<double>(rho_);
    return horizon() == 0 ? 0.0 : prefix_.back() / static_cast<double>(horizon());
  }

 private:
  FidelitySpec(Family family, std::vector<double> values, Indexing indexing)
      : family_(family), indexing_(indexing), values_(std::move(values)) {
    for (double v : values_)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("fidelity values must lie in [0,1]");
    prefix_.assign(values_.size() + 1, 0.0);
    for (std::size_t n = 0; n < values_.size(); ++n) prefix_[n + 1] = prefix_[n] + values_[n];
  }

  Family family_;
  Indexing indexing_;
  std::vector<double> values_;
  std::vector<double> prefix_;
  std::size_t rho_ = 0;
  double r_ = 0.0;
  std::size_t m_ = 0;
};

using SpecList = std::vector<FidelitySpec>;

/// f(n) for 1 <= n <= T.
inline double fidelity_at(const FidelitySpec& spec, std::size_t n) {
  if (n == 0 || n > spec.horizon())
    throw std::out_of_range("fidelity_at: play count " + std::to_string(n) +
                            " outside [1, " + std::to_string(spec.horizon()) + "]");
  return spec.values()[n - 1];
}

/// F(n) = f(1) + ... + f(n); F(0) = 0.
inline double cumulative_fidelity(const FidelitySpec& spec, std::size_t n) {
  if (n > spec.horizon())
    throw std::out_of_range("cumulative_fidelity: n = " + std::to_string(n) +
                            " exceeds horizon " + std::to_string(spec.horizon()));
  return spec.prefix()[n];
}

/// Total plays N and current consecutive-run lengths Q per arm.
struct PlayState {
  std::size_t t = 0;
  std::vector<std::size_t> plays;  // N
  std::vector<std::size_t> run;    // Q
  std::optional<std::size_t> last_arm;

  explicit PlayState(std::size_t arms = 0) : plays(arms, 0), run(arms, 0) {}

  std::size_t arms() const { return plays.size(); }

  bool consistent() const {
    std::size_t total = 0, active = 0;
    for (std::size_t j = 0; j < arms(); ++j) {
      total += plays[j];
      if (run[j] > plays[j]) return false;
      if (run[j] > 0) {
        ++active;
        if (!last_arm || *last_arm != j) return false;
      }
    }
    return total == t && active <= 1;
  }
};

struct RewardSample {
  double base = 0.0;
  double fidelity = 0.0;
  double total() const { return base + fidelity; }
};

/// Records one play of `arm` and returns the fidelity it earns.
inline double advance(PlayState& state, std::span<const FidelitySpec> specs, RewardModel model,
                      std::size_t arm) {
  if (arm >= state.arms() || arm >= specs.size())
    throw std::out_of_range("advance: arm " + std::to_string(arm) + " out of range");
  const bool continuing = state.last_arm && *state.last_arm == arm;
  const std::size_t prior_run = continuing ? state.run[arm] : 0;
  const std::size_t prior_plays = state.plays[arm];
  if (state.last_arm && !continuing) state.run[*state.last_arm] = 0;
  state.run[arm] = prior_run + 1;
  state.plays[arm] = prior_plays + 1;
  state.last_arm = arm;
  ++state.t;

  const FidelitySpec& spec = specs[arm];
  const std::size_t counter = model == RewardModel::LoyaltyPoints ? state.plays[arm] : state.run[arm];
  if (spec.indexing() == Indexing::CurrentCount) return fidelity_at(spec, counter);
  return counter == 1 ? 0.0 : fidelity_at(spec, counter - 1);
}

/// Piecewise-linear interpolation of F at a real point x in [0, T].
inline double interpolate_cumulative(const FidelitySpec& spec, double x) {
  const auto prefix = spec.prefix();
  const double horizon = static_cast<double>(spec.horizon());
  x = std::clamp(x, 0.0, horizon);
  const double lo = std::floor(x);
  const auto n = static_cast<std::size_t>(lo);
  if (n >= spec.horizon()) return prefix.back();
  return prefix[n] + (x - lo) * (prefix[n + 1] - prefix[n]);
}

inline constexpr double kSimplexTolerance = 1e-9;

/// Validates a point of the K-simplex and re-normalizes away float drift.
inline std::vector<double> checked_simplex_point(std::span<const double> q) {
  double sum = 0.0;
  for (double v : q) {
    if (v < -kSimplexTolerance || !std::isfinite(v))
      throw std::invalid_argument("simplex point has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance)
    throw std::invalid_argument("simplex point does not sum to 1");
  std::vector<double> out(q.begin(), q.end());
  for (double& v : out) v = std::max(v, 0.0) / sum;
  return out;
}

/// h(q) = (1/T) sum_j C_j(T q_j), C_j the linear interpolation of F_j.
/// Concave and 1-Lipschitz in l1 when every f_j is nonincreasing.
inline double h_extension(std::span<const FidelitySpec> specs, std::size_t horizon,
                          std::span<const double> q) {
  if (q.size() != specs.size())
    throw std::invalid_argument("h_extension: dimension mismatch");
  const auto point = checked_simplex_point(q);
  const double T = static_cast<double>(horizon);
  double total = 0.0;
  for (std::size_t j = 0; j < specs.size(); ++j) {
    const double x = T * point[j];
    const double nearest = std::round(x);
    // Integral types must reproduce F exactly.
    total += std::abs(x - nearest) <= 1e-9 * std::max(1.0, T)
                 ? cumulative_fidelity(specs[j], static_cast<std::size_t>(nearest))
                 : interpolate_cumulative(specs[j], x);
  }
  return total / T;
}

inline bool all_nonincreasing(std::span<const FidelitySpec> specs) {
  return std::all_of(specs.begin(), specs.end(), [](const auto& s) { return s.nonincreasing(); });
}
inline bool all_nondecreasing(std::span<const FidelitySpec> specs) {
  return std::all_of(specs.begin(), specs.end(), [](const auto& s) { return s.nondecreasing(); });
}
inline bool all_coupon(std::span<const FidelitySpec> specs) {
  return std::all_of(specs.begin(), specs.end(),
                     [](const auto& s) { return s.family() == Family::Coupon; });
}

}  // namespace fidbandit
