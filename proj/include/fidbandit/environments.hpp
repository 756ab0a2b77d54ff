#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fidbandit/random.hpp"

namespace fidbandit {

enum class Distribution { Bernoulli, UniformAroundMean };

inline Distribution parse_distribution(const std::string& s) {
  if (s == "bernoulli") return Distribution::Bernoulli;
  if (s == "uniform_around_mean" || s == "uniform") return Distribution::UniformAroundMean;
  throw std::invalid_argument("unknown distribution '" + s + "'");
}

/// Arms with fixed means. X(t, j) is a pure function of (seed, t, j).
struct StochasticInstance {
  std::vector<double> means;
  Distribution distribution = Distribution::Bernoulli;
  std::uint64_t seed = 0;

  StochasticInstance() = default;
  StochasticInstance(std::vector<double> mu, Distribution dist, std::uint64_t s)
      : means(std::move(mu)), distribution(dist), seed(s) {
    for (double m : means)
      if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("arm means must lie in [0,1]");
  }

  std::size_t arms() const { return means.size(); }
};

inline double sample_stochastic(const StochasticInstance& inst, std::size_t t, std::size_t j) {
  if (j >= inst.arms()) throw std::out_of_range("sample_stochastic: arm out of range");
  const double mu = inst.means[j];
  const double u = counter_uniform(inst.seed, t, j);
  if (inst.distribution == Distribution::Bernoulli) return u < mu ? 1.0 : 0.0;
  const double half_width = std::min({mu, 1.0 - mu, 0.25});
  return std::clamp(mu + half_width * (2.0 * u - 1.0), 0.0, 1.0);
}

/// A T x K matrix of base rewards fixed before play (oblivious adversary).
class AdversarialInstance {
 public:
  AdversarialInstance() = default;
  AdversarialInstance(std::size_t rounds, std::size_t arms, std::vector<double> data)
      : rounds_(rounds), arms_(arms), data_(std::move(data)) {
    if (data_.size() != rounds_ * arms_)
      throw std::invalid_argument("reward matrix size does not match T x K");
    for (double x : data_)
      if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("rewards must lie in [0,1]");
  }

  static AdversarialInstance from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("reward matrix has no rows");
    const std::size_t k = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * k);
    for (const auto& row : rows) {
      if (row.size() != k) throw std::invalid_argument("ragged reward matrix");
      data.insert(data.end(), row.begin(), row.end());
    }
    return AdversarialInstance(rows.size(), k, std::move(data));
  }

  /// Constant columns X(t, j) = mu_j.
  static AdversarialInstance constant(std::size_t rounds, const std::vector<double>& mu) {
    std::vector<double> data;
    data.reserve(rounds * mu.size());
    for (std::size_t t = 0; t < rounds; ++t) data.insert(data.end(), mu.begin(), mu.end());
    return AdversarialInstance(rounds, mu.size(), std::move(data));
  }

  std::size_t rounds() const { return rounds_; }
  std::size_t arms() const { return arms_; }
  double operator()(std::size_t t, std::size_t j) const { return data_[t * arms_ + j]; }

  double column_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t t = 0; t < rounds_; ++t) s += (*this)(t, j);
    return s;
  }
  std::vector<double> column_means() const {
    std::vector<double> mu(arms_);
    for (std::size_t j = 0; j < arms_; ++j) mu[j] = column_sum(j) / static_cast<double>(rounds_);
    return mu;
  }

  bool operator==(const AdversarialInstance&) const = default;

 private:
  std::size_t rounds_ = 0;
  std::size_t arms_ = 0;
  std::vector<double> data_;
};

enum class LowerBoundCase { I, II };

/// Two-arm construction against any policy under increasing loyalty
/// fidelity: arm 0 pays delta/5 throughout; arm 1 pays 0 in the first half
/// and 0 (case I) or delta (case II) in the second half.
inline AdversarialInstance lower_bound_pair(std::size_t horizon, double delta, LowerBoundCase which) {
  if (horizon == 0 || horizon % 2 != 0)
    throw std::invalid_argument("lower_bound_pair: horizon must be even and positive");
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("lower_bound_pair: delta must lie in [0,1]");
  std::vector<double> data(horizon * 2);
  for (std::size_t t = 0; t < horizon; ++t) {
    data[2 * t] = delta / 5.0;
    data[2 * t + 1] = (t >= horizon / 2 && which == LowerBoundCase::II) ? delta : 0.0;
  }
  return AdversarialInstance(horizon, 2, std::move(data));
}

/// One full sample path of a stochastic instance, frozen as a matrix.
inline AdversarialInstance iid_as_adversarial(const StochasticInstance& inst, std::size_t horizon) {
  std::vector<double> data(horizon * inst.arms());
  for (std::size_t t = 0; t < horizon; ++t)
    for (std::size_t j = 0; j < inst.arms(); ++j) data[t * inst.arms() + j] = sample_stochastic(inst, t, j);
  return AdversarialInstance(horizon, inst.arms(), std::move(data));
}

/// Headerless CSV: one row per round, one column per arm.
inline AdversarialInstance load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reward matrix '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  try {
    return AdversarialInstance::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void save_matrix_csv(const AdversarialInstance& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write reward matrix '" + path + "'");
  out.precision(17);
  for (std::size_t t = 0; t < x.rounds(); ++t) {
    for (std::size_t j = 0; j < x.arms(); ++j) out << (j ? "," : "") << x(t, j);
    out << '\n';
  }
}

/// Where base rewards come from during a run.
using Environment = std::variant<StochasticInstance, AdversarialInstance>;

inline double base_reward(const Environment& env, std::size_t t, std::size_t j) {
  if (const auto* s = std::get_if<StochasticInstance>(&env)) return sample_stochastic(*s, t, j);
  const auto& x = std::get<AdversarialInstance>(env);
  if (t >= x.rounds() || j >= x.arms()) throw std::out_of_range("base_reward: index out of range");
  return x(t, j);
}

inline std::size_t arm_count(const Environment& env) {
  return std::visit([](const auto& e) { return e.arms(); }, env);
}

}  // namespace fidbandit
