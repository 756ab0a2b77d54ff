#pragma once

// Baseline optima for the three regret notions:
//   * sigma / best type (mean regret, loyalty model)
//   * best single arm, periodic (i, k, m) sequences (subscription)
//   * exhaustive enumeration for exact weak/strong baselines at tiny scale

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fidbandit/core.hpp"
#include "fidbandit/environments.hpp"
#include "fidbandit/lp.hpp"

namespace fidbandit {

/// Per-arm play counts of a length-T sequence.
struct TypeVector {
  std::vector<std::size_t> counts;

  std::size_t total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }
  std::size_t operator[](std::size_t j) const { return counts[j]; }
  auto operator<=>(const TypeVector&) const = default;

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t j = 0; j < counts.size(); ++j) os << (j ? "," : "") << counts[j];
    os << ')';
    return os.str();
  }
};

inline TypeVector type_of(std::span<const std::size_t> seq, std::size_t arms) {
  TypeVector n{std::vector<std::size_t>(arms, 0)};
  for (std::size_t a : seq) {
    if (a >= arms) throw std::out_of_range("type_of: arm out of range");
    ++n.counts[a];
  }
  return n;
}

/// sigma(mu, N) = sum_j (N_j mu_j + F_j(N_j)).
inline double sigma(std::span<const double> mu, const TypeVector& n, std::span<const FidelitySpec> specs) {
  if (mu.size() != n.counts.size() || specs.size() != n.counts.size())
    throw std::invalid_argument("sigma: dimension mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j)
    total += static_cast<double>(n[j]) * mu[j] + cumulative_fidelity(specs[j], n[j]);
  return total;
}

struct TypeOptimum {
  TypeVector type;
  double value = 0.0;
};

/// Global maximizer of sigma(mu, .) over all types with sum N = T.
/// O(K T^2) dynamic program over (arm suffix, remaining budget); ties go to
/// the lexicographically smallest type.
inline TypeOptimum best_type_dp(std::span<const double> mu, std::span<const FidelitySpec> specs,
                                std::size_t horizon) {
  const std::size_t k = mu.size();
  if (k == 0 || specs.size() != k) throw std::invalid_argument("best_type_dp: dimension mismatch");
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  const std::size_t width = horizon + 1;
  std::vector<double> gains(k * width);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t n = 0; n <= horizon; ++n)
      gains[j * width + n] = static_cast<double>(n) * mu[j] + cumulative_fidelity(specs[j], n);
  auto gain = [&](std::size_t j, std::size_t n) { return gains[j * width + n]; };
  // best[j][b]: best value of arms j..K-1 using exactly b plays. Row 0 is
  // only needed at b = T.
  std::vector<double> best((k + 1) * width, ninf);
  best[k * width + 0] = 0.0;
  for (std::size_t j = k; j-- > 0;) {
    const double* next = &best[(j + 1) * width];
    double* cur = &best[j * width];
    for (std::size_t b = j == 0 ? horizon : 0; b <= horizon; ++b) {
      if (j + 1 == k) {
        cur[b] = gain(j, b);
        continue;
      }
      double v = ninf;
      for (std::size_t n = 0; n <= b; ++n) {
        const double rest = next[b - n];
        if (rest == ninf) continue;
        v = std::max(v, gain(j, n) + rest);
      }
      cur[b] = v;
    }
  }
  TypeOptimum out{TypeVector{std::vector<std::size_t>(k, 0)}, 0.0};
  std::size_t budget = horizon;
  for (std::size_t j = 0; j < k; ++j) {
    const double target = best[j * width + budget];
    const double* next = &best[(j + 1) * width];
    for (std::size_t n = 0; n <= budget; ++n) {
      if (next[budget - n] != ninf && gain(j, n) + next[budget - n] == target) {
        out.type.counts[j] = n;
        budget -= n;
        break;
      }
    }
  }
  out.value = sigma(mu, out.type, specs);
  return out;
}

/// Greedy marginal-gain allocation; optimal when every f_j is nonincreasing
/// (separable concave objective).
inline TypeOptimum best_type_greedy(std::span<const double> mu, std::span<const FidelitySpec> specs,
                                    std::size_t horizon) {
  const std::size_t k = mu.size();
  if (k == 0 || specs.size() != k) throw std::invalid_argument("best_type_greedy: dimension mismatch");
  if (!all_nonincreasing(specs))
    throw std::invalid_argument("best_type_greedy: requires nonincreasing fidelity for every arm");
  TypeOptimum out{TypeVector{std::vector<std::size_t>(k, 0)}, 0.0};
  for (std::size_t step = 0; step < horizon; ++step) {
    std::size_t arm = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      const double marginal = mu[j] + fidelity_at(specs[j], out.type.counts[j] + 1);
      if (marginal > best) {
        best = marginal;
        arm = j;
      }
    }
    ++out.type.counts[arm];
  }
  out.value = sigma(mu, out.type, specs);
  return out;
}

struct SequenceTotals {
  double base = 0.0;
  double fidelity = 0.0;
  double total() const { return base + fidelity; }
};

template <class ArmAt>
SequenceTotals simulate_with(ArmAt&& arm_at, const AdversarialInstance& x,
                             std::span<const FidelitySpec> specs, RewardModel model) {
  PlayState state(x.arms());
  SequenceTotals s;
  for (std::size_t t = 0; t < x.rounds(); ++t) {
    const std::size_t a = arm_at(t);
    s.fidelity += advance(state, specs, model, a);
    s.base += x(t, a);
  }
  return s;
}

/// Cumulative reward S_T of a fixed arm sequence.
inline double simulate_sequence(std::span<const std::size_t> seq, const AdversarialInstance& x,
                                std::span<const FidelitySpec> specs, RewardModel model) {
  if (seq.size() != x.rounds())
    throw std::invalid_argument("simulate_sequence: sequence length " + std::to_string(seq.size()) +
                                " does not match horizon " + std::to_string(x.rounds()));
  return simulate_with([&](std::size_t t) { return seq[t]; }, x, specs, model).total();
}

/// The periodic sequence playing arm i m times, then arm k once, repeated.
/// m == T encodes uninterrupted play of arm i.
struct TripleSpec {
  std::size_t i = 0;
  std::size_t k = 0;
  std::size_t m = 1;

  auto operator<=>(const TripleSpec&) const = default;

  std::size_t arm_at(std::size_t position, std::size_t horizon) const {
    if (m >= horizon) return i;
    return position % (m + 1) == m ? k : i;
  }
  std::vector<std::size_t> sequence(std::size_t horizon) const {
    std::vector<std::size_t> seq(horizon);
    for (std::size_t t = 0; t < horizon; ++t) seq[t] = arm_at(t, horizon);
    return seq;
  }
  std::string str() const {
    return "(" + std::to_string(i) + "," + std::to_string(k) + "," + std::to_string(m) + ")";
  }
};

namespace detail {
inline void check_triple(std::size_t i, std::size_t k, std::size_t m, std::size_t arms, std::size_t horizon) {
  if (i >= arms || k >= arms) throw std::out_of_range("triple arm out of range");
  if (m == 0 || m > horizon)
    throw std::out_of_range("period length m = " + std::to_string(m) + " outside [1, " +
                            std::to_string(horizon) + "]");
}
}  // namespace detail

/// Normalized total fidelity of j(i, k, m):
/// (floor(T/(m+1)) (F_i(m) + F_k(1)) + F_i(T - (m+1) floor(T/(m+1)))) / T.
inline double phi(std::size_t i, std::size_t k, std::size_t m, std::span<const FidelitySpec> specs,
                  std::size_t horizon) {
  detail::check_triple(i, k, m, specs.size(), horizon);
  const double T = static_cast<double>(horizon);
  if (m == horizon) return cumulative_fidelity(specs[i], horizon) / T;
  const std::size_t cycles = horizon / (m + 1);
  const std::size_t tail = horizon - (m + 1) * cycles;
  return (static_cast<double>(cycles) *
              (cumulative_fidelity(specs[i], m) + cumulative_fidelity(specs[k], 1)) +
          cumulative_fidelity(specs[i], tail)) /
         T;
}

/// Expected reward W_T of j(i, k, m) under constant means mu.
inline double periodic_value(std::size_t i, std::size_t k, std::size_t m, std::span<const double> mu,
                             std::span<const FidelitySpec> specs, std::size_t horizon) {
  detail::check_triple(i, k, m, specs.size(), horizon);
  if (mu.size() != specs.size()) throw std::invalid_argument("periodic_value: dimension mismatch");
  const double T = static_cast<double>(horizon);
  if (m == horizon) return T * mu[i] + cumulative_fidelity(specs[i], horizon);
  const std::size_t cycles = horizon / (m + 1);
  const std::size_t tail = horizon - (m + 1) * cycles;
  const double c = static_cast<double>(cycles);
  return (T - c) * mu[i] + c * mu[k] +
         c * (cumulative_fidelity(specs[i], m) + cumulative_fidelity(specs[k], 1)) +
         cumulative_fidelity(specs[i], tail);
}

struct TripleOptimum {
  TripleSpec triple;
  double value = 0.0;
};

namespace detail {
// Scan order defines the tie-break: lexicographic in (i, k, m). Pure play of
// arm i appears once, as (i, i, T); k == i is skipped for m < T because the
// run is then never broken and the periodic accounting does not apply.
template <class Value>
TripleOptimum scan_triples(std::size_t arms, std::size_t horizon, Value&& value) {
  TripleOptimum best{{0, 0, horizon}, -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < arms; ++i)
    for (std::size_t k = 0; k < arms; ++k)
      for (std::size_t m = 1; m <= horizon; ++m) {
        if ((k == i) != (m == horizon)) continue;
        const TripleSpec cand{i, k, m};
        const double v = value(cand);
        if (v > best.value) best = {cand, v};
      }
  return best;
}
}  // namespace detail

/// argmax over (i, k, m) of W_T under means mu.
inline TripleOptimum best_triple(std::span<const double> mu, std::span<const FidelitySpec> specs,
                                 std::size_t horizon) {
  return detail::scan_triples(specs.size(), horizon, [&](const TripleSpec& c) {
    return periodic_value(c.i, c.k, c.m, mu, specs, horizon);
  });
}

/// Fidelity collected by a subscription run of n consecutive plays.
inline double run_fidelity(const FidelitySpec& spec, std::size_t n) {
  if (spec.indexing() == Indexing::CurrentCount) return cumulative_fidelity(spec, n);
  return n == 0 ? 0.0 : cumulative_fidelity(spec, n - 1);
}

/// argmax over (i, k, m) of the realized S_T(j(i, k, m)) on a reward matrix.
/// In the subscription model every run of the pattern is accounted in closed
/// form, O(K^2 T log T); the loyalty model replays each sequence.
inline TripleOptimum best_triple(const AdversarialInstance& x, std::span<const FidelitySpec> specs,
                                 RewardModel model = RewardModel::Subscription) {
  const std::size_t horizon = x.rounds();
  if (specs.size() != x.arms()) throw std::invalid_argument("best_triple: dimension mismatch");
  if (model == RewardModel::LoyaltyPoints)
    return detail::scan_triples(specs.size(), horizon, [&](const TripleSpec& c) {
      return simulate_with([&](std::size_t t) { return c.arm_at(t, horizon); }, x, specs, model).total();
    });
  std::vector<double> column(x.arms());
  for (std::size_t j = 0; j < x.arms(); ++j) column[j] = x.column_sum(j);
  return detail::scan_triples(specs.size(), horizon, [&](const TripleSpec& c) {
    if (c.m >= horizon) return column[c.i] + run_fidelity(specs[c.i], horizon);
    const std::size_t cycles = horizon / (c.m + 1);
    const std::size_t tail = horizon - (c.m + 1) * cycles;
    double swapped = 0.0;
    for (std::size_t t = c.m; t < horizon; t += c.m + 1) swapped += x(t, c.k) - x(t, c.i);
    return column[c.i] + swapped +
           static_cast<double>(cycles) * (run_fidelity(specs[c.i], c.m) + run_fidelity(specs[c.k], 1)) +
           run_fidelity(specs[c.i], tail);
  });
}

/// Fidelity collected by T uninterrupted plays of one arm (either model).
inline double single_run_fidelity(const FidelitySpec& spec, std::size_t horizon) {
  return run_fidelity(spec, horizon);
}

struct ArmOptimum {
  std::size_t arm = 0;
  double value = 0.0;
};

inline ArmOptimum best_single_arm(const AdversarialInstance& x, std::span<const FidelitySpec> specs) {
  ArmOptimum best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < x.arms(); ++j) {
    const double v = x.column_sum(j) + single_run_fidelity(specs[j], x.rounds());
    if (v > best.value) best = {j, v};
  }
  return best;
}

inline ArmOptimum best_single_arm(std::span<const double> mu, std::span<const FidelitySpec> specs,
                                  std::size_t horizon) {
  ArmOptimum best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const double v = static_cast<double>(horizon) * mu[j] + single_run_fidelity(specs[j], horizon);
    if (v > best.value) best = {j, v};
  }
  return best;
}

inline std::size_t lcm_of_periods(std::span<const FidelitySpec> specs) {
  std::size_t l = 1;
  for (const auto& s : specs) l = std::lcm(l, std::max<std::size_t>(s.rho(), 1));
  return l;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration.

inline constexpr std::size_t kBruteForceCap = 600000;

inline std::optional<std::size_t> sequence_count(std::size_t arms, std::size_t horizon) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (n > kBruteForceCap / std::max<std::size_t>(arms, 1)) return std::nullopt;
    n *= arms;
  }
  return n;
}

inline bool brute_force_feasible(std::size_t arms, std::size_t horizon) {
  const auto n = sequence_count(arms, horizon);
  return n && *n <= kBruteForceCap;
}

/// Statistics over the best-fidelity sequences of one type. In the loyalty
/// model every sequence of a type earns the same fidelity, so these are
/// statistics over the whole type.
struct TypeStats {
  TypeVector type;
  double fidelity = 0.0;  // largest fidelity total among sequences of this type
  std::size_t count = 0;
  double min = std::numeric_limits<double>::infinity();
  double mean = 0.0;
  double max = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> argmin, argmax;
  bool essential = false;  // uniquely optimal for some mean vector in [0,1]^K
};

struct BruteForceResult {
  RewardModel model = RewardModel::LoyaltyPoints;
  std::vector<TypeStats> types;
  double weak = 0.0;
  double strong = 0.0;
  std::vector<std::size_t> weak_witness, strong_witness;
  std::optional<double> mean;  // loyalty only: max_N sigma(mu_hat, N)
  TypeVector mean_witness;
  double max_all = 0.0;                 // best of all K^T sequences
  std::optional<TripleOptimum> triple;  // subscription only
};

namespace detail {

// A class is uniquely optimal somewhere in [0,1]^K iff
//   max s  s.t.  (N_a - N_c).mu + (F_a - F_c) >= s  for all c != a,  0 <= mu <= 1
// has a positive optimum. Variables are shifted so the origin is feasible.
inline bool uniquely_optimal_somewhere(std::size_t a, const std::vector<TypeStats>& classes,
                                       std::size_t arms, std::size_t horizon) {
  if (classes.size() == 1) return true;
  const double shift = static_cast<double>(horizon) + 2.0;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (c == a) continue;
    std::vector<double> row(arms + 1);
    for (std::size_t j = 0; j < arms; ++j)
      row[j] = static_cast<double>(classes[c].type[j]) - static_cast<double>(classes[a].type[j]);
    row[arms] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(classes[a].fidelity - classes[c].fidelity + shift);
  }
  for (std::size_t j = 0; j <= arms; ++j) {
    std::vector<double> row(arms + 1, 0.0);
    row[j] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(j < arms ? 1.0 : 2.0 * shift);
  }
  std::vector<double> objective(arms + 1, 0.0);
  objective[arms] = 1.0;
  return lp_maximize(rows, rhs, objective) - shift > 1e-9;
}

}  // namespace detail

/// Enumerates all K^T sequences (K^T <= 600000).
///
/// Sequences are grouped by type; within a type only those with the largest
/// fidelity total can be optimal for any mean vector. A type is essential when
/// it is the unique optimum for some mean vector; the essential types form the
/// unique minimal covering set, so
///   weak   = max over essential types of the worst sequence of that type
///   strong = max over essential types of the best sequence of that type.
/// For strictly decreasing loyalty fidelity every type is essential.
inline BruteForceResult brute_force_baselines(const AdversarialInstance& x, std::span<const FidelitySpec> specs,
                                              RewardModel model) {
  const std::size_t arms = x.arms();
  const std::size_t horizon = x.rounds();
  if (specs.size() != arms) throw std::invalid_argument("brute_force_baselines: dimension mismatch");
  if (!brute_force_feasible(arms, horizon))
    throw std::length_error("brute_force_baselines: K^T exceeds the enumeration cap of " +
                            std::to_string(kBruteForceCap) + " sequences");
  constexpr double tie = 1e-9;

  std::vector<std::size_t> index_of;  // mixed-radix type key -> class index
  std::size_t radix_size = 1;
  for (std::size_t j = 0; j < arms; ++j) radix_size *= horizon + 1;
  index_of.assign(radix_size, static_cast<std::size_t>(-1));

  BruteForceResult out;
  out.model = model;
  auto for_each_sequence = [&](auto&& visit) {
    std::vector<std::size_t> seq(horizon, 0);
    std::vector<std::size_t> counts(arms, 0);
    for (;;) {
      std::fill(counts.begin(), counts.end(), 0);
      std::size_t key = 0;
      for (std::size_t a : seq) ++counts[a];
      for (std::size_t j = arms; j-- > 0;) key = key * (horizon + 1) + counts[j];
      const auto totals = simulate_with([&](std::size_t t) { return seq[t]; }, x, specs, model);
      visit(seq, counts, key, totals);
      std::size_t pos = 0;
      while (pos < horizon && ++seq[pos] == arms) seq[pos++] = 0;
      if (pos == horizon) break;
    }
  };

  // Pass 1: the best fidelity of each type.
  for_each_sequence([&](const auto&, const auto& counts, std::size_t key, const SequenceTotals& s) {
    if (index_of[key] == static_cast<std::size_t>(-1)) {
      index_of[key] = out.types.size();
      TypeStats st;
      st.type.counts.assign(counts.begin(), counts.end());
      st.fidelity = s.fidelity;
      out.types.push_back(std::move(st));
    } else {
      auto& st = out.types[index_of[key]];
      st.fidelity = std::max(st.fidelity, s.fidelity);
    }
  });

  // Pass 2: statistics over the best-fidelity sequences of each type.
  double best_all = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_all_seq;
  for_each_sequence([&](const auto& seq, const auto&, std::size_t key, const SequenceTotals& s) {
    const double total = s.total();
    if (total > best_all) {
      best_all = total;
      best_all_seq = seq;
    }
    auto& st = out.types[index_of[key]];
    if (s.fidelity < st.fidelity - tie) return;
    ++st.count;
    st.mean += total;
    if (total < st.min) {
      st.min = total;
      st.argmin = seq;
    }
    if (total > st.max) {
      st.max = total;
      st.argmax = seq;
    }
  });
  out.max_all = best_all;

  std::sort(out.types.begin(), out.types.end(), [](const TypeStats& a, const TypeStats& b) {
    return a.type < b.type;
  });
  for (auto& st : out.types) st.mean /= static_cast<double>(st.count);

  out.weak = -std::numeric_limits<double>::infinity();
  out.strong = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < out.types.size(); ++c) {
    auto& st = out.types[c];
    st.essential = detail::uniquely_optimal_somewhere(c, out.types, arms, horizon);
    if (!st.essential) continue;
    if (st.min > out.weak) {
      out.weak = st.min;
      out.weak_witness = st.argmin;
    }
    if (st.max > out.strong) {
      out.strong = st.max;
      out.strong_witness = st.argmax;
    }
  }

  if (model == RewardModel::LoyaltyPoints) {
    const auto mu_hat = x.column_means();
    out.mean = -std::numeric_limits<double>::infinity();
    for (const auto& st : out.types) {
      const double v = sigma(mu_hat, st.type, specs);
      if (v > *out.mean) {
        out.mean = v;
        out.mean_witness = st.type;
      }
    }
  } else {
    out.triple = best_triple(x, specs, model);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regret reports.

enum class Regime { Zero, Increasing, Decreasing, Coupon, General };

inline Regime classify(std::span<const FidelitySpec> specs) {
  if (std::all_of(specs.begin(), specs.end(), [](const auto& s) { return s.is_zero(); })) return Regime::Zero;
  if (all_coupon(specs)) return Regime::Coupon;
  if (all_nondecreasing(specs)) return Regime::Increasing;
  if (all_nonincreasing(specs)) return Regime::Decreasing;
  return Regime::General;
}

struct Baseline {
  bool available = false;
  double value = 0.0;
  bool estimated = false;  // an upper estimate rather than the exact baseline
  std::string witness;
  std::string note;

  static Baseline exact(double v, std::string witness, std::string note = {}) {
    return {true, v, false, std::move(witness), std::move(note)};
  }
  static Baseline upper_estimate(double v, std::string witness, std::string note) {
    return {true, v, true, std::move(witness), std::move(note)};
  }
  static Baseline unavailable(std::string why) { return {false, 0.0, false, {}, std::move(why)}; }
};

struct Baselines {
  Baseline weak, mean, strong;
};

/// Means (stochastic, pseudo-regret) or a fixed reward matrix.
using BaselineSource = std::variant<std::vector<double>, AdversarialInstance>;

namespace detail {
inline std::string seq_str(const std::vector<std::size_t>& seq) {
  std::string s = "[";
  for (std::size_t t = 0; t < seq.size(); ++t) s += (t ? "," : "") + std::to_string(seq[t]);
  return s + "]";
}
}  // namespace detail

/// Computes every baseline the scale and fidelity structure allow. Exact
/// weak/strong values beyond enumeration scale are only reported where the
/// minimal sufficient sets are known; otherwise the entry is unavailable.
inline Baselines compute_baselines(const BaselineSource& source, std::span<const FidelitySpec> specs,
                                   RewardModel model, std::size_t horizon) {
  const bool stochastic = std::holds_alternative<std::vector<double>>(source);
  const AdversarialInstance matrix = stochastic
                                         ? AdversarialInstance::constant(horizon, std::get<0>(source))
                                         : std::get<1>(source);
  if (matrix.rounds() != horizon) throw std::invalid_argument("compute_baselines: horizon mismatch");
  const std::size_t arms = matrix.arms();
  if (specs.size() != arms) throw std::invalid_argument("compute_baselines: one fidelity spec per arm required");
  const auto mu = stochastic ? std::get<0>(source) : matrix.column_means();
  const Regime regime = classify(specs);
  const bool small = brute_force_feasible(arms, horizon);
  const auto single = best_single_arm(matrix, specs);
  const std::string single_witness = "single arm " + std::to_string(single.arm);
  Baselines b;

  if (model == RewardModel::LoyaltyPoints) {
    const auto opt = all_nonincreasing(specs) ? best_type_greedy(mu, specs, horizon)
                                              : best_type_dp(mu, specs, horizon);
    b.mean = Baseline::exact(opt.value, "type " + opt.type.str());
    if (stochastic) {
      const std::string note = "stochastic pseudo-regret: every notion equals the best sequence";
      b.weak = b.strong = Baseline::exact(opt.value, "type " + opt.type.str(), note);
      b.mean.note = note;
    } else if (small) {
      const auto bf = brute_force_baselines(matrix, specs, model);
      b.weak = Baseline::exact(bf.weak, detail::seq_str(bf.weak_witness), "enumeration");
      b.strong = Baseline::exact(bf.strong, detail::seq_str(bf.strong_witness), "enumeration");
    } else if (regime == Regime::Zero || regime == Regime::Increasing) {
      b.weak = b.strong = Baseline::exact(single.value, single_witness, "single-arm strategies are sufficient");
    } else if (regime == Regime::Coupon) {
      const auto lcm = static_cast<double>(lcm_of_periods(specs));
      b.weak = Baseline::unavailable("weak baseline needs enumeration at this scale");
      b.strong = Baseline::upper_estimate(single.value + lcm, single_witness, "best single arm + lcm of periods");
    } else {
      b.weak = Baseline::unavailable("exact weak baseline needs enumeration at this scale");
      b.strong = Baseline::unavailable("exact strong baseline needs enumeration at this scale");
    }
    return b;
  }

  b.mean = Baseline::unavailable("mean regret is not defined for the subscription model");
  if (small) {
    const auto bf = brute_force_baselines(matrix, specs, model);
    b.weak = Baseline::exact(bf.weak, detail::seq_str(bf.weak_witness), "enumeration");
    b.strong = Baseline::exact(bf.strong, detail::seq_str(bf.strong_witness), "enumeration");
  } else if (regime == Regime::Zero || regime == Regime::Increasing) {
    b.weak = b.strong = Baseline::exact(single.value, single_witness, "single-arm strategies are sufficient");
  } else if (regime == Regime::Decreasing) {
    const bool closed_form = stochastic && std::all_of(specs.begin(), specs.end(), [](const auto& s) {
      return s.indexing() == Indexing::CurrentCount;
    });
    const auto best = closed_form ? best_triple(mu, specs, horizon) : best_triple(matrix, specs, model);
    b.weak = b.strong = Baseline::exact(best.value, "triple " + best.triple.str(), "periodic sequences are sufficient");
  } else if (regime == Regime::Coupon) {
    const auto lcm = static_cast<double>(lcm_of_periods(specs));
    b.weak = Baseline::unavailable("weak baseline needs enumeration at this scale");
    b.strong = Baseline::upper_estimate(single.value + 2.0 * lcm, single_witness,
                                        "best single arm + 2 x lcm of periods");
  } else {
    b.weak = Baseline::unavailable("exact weak baseline needs enumeration at this scale");
    b.strong = Baseline::unavailable("exact strong baseline needs enumeration at this scale");
  }
  return b;
}

struct RegretEntry {
  bool available = false;
  double baseline = 0.0;
  double regret = 0.0;
  bool estimated = false;
  std::string witness;
  std::string note;
};

struct RegretReport {
  RegretEntry weak, mean, strong;
  double realized = 0.0;
};

inline RegretEntry regret_entry(const Baseline& b, double realized) {
  RegretEntry e;
  e.available = b.available;
  e.baseline = b.value;
  e.regret = b.available ? b.value - realized : 0.0;
  e.estimated = b.estimated;
  e.witness = b.witness;
  e.note = b.note;
  return e;
}

inline RegretReport regret_report(const Baselines& b, double realized) {
  return {regret_entry(b.weak, realized), regret_entry(b.mean, realized), regret_entry(b.strong, realized),
          realized};
}

inline RegretReport regret_report(const BaselineSource& source, std::span<const FidelitySpec> specs,
                                  RewardModel model, std::size_t horizon, double realized) {
  return regret_report(compute_baselines(source, specs, model, horizon), realized);
}

}  // namespace fidbandit
