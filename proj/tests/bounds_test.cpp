#include <gtest/gtest.h>

#include <cmath>

#include "fidbandit/bounds.hpp"

using namespace fidbandit;

namespace {

BoundInputs inputs(std::size_t K, std::size_t T, std::vector<double> mu = {}, SpecList specs = {}) {
  BoundInputs in;
  in.arms = K;
  in.horizon = T;
  in.means = std::move(mu);
  in.specs = std::move(specs);
  return in;
}

}  // namespace

TEST(Bounds, LowerBoundArithmetic) {
  auto in = inputs(2, 4000);
  in.delta = 1.0;
  EXPECT_DOUBLE_EQ(bound_value("3", in), 100.0);
}

TEST(Bounds, LowerBoundDeltaFromStepFidelity) {
  const std::size_t T = 4000;
  const auto in = inputs(2, T, {}, {FidelitySpec::step(T, T / 4), FidelitySpec::step(T, T / 4)});
  EXPECT_DOUBLE_EQ(bound_value("3", in), 100.0);
  const auto flat = inputs(2, T, {}, {FidelitySpec::tabular(T, {0.5}), FidelitySpec::tabular(T, {0.5})});
  EXPECT_DOUBLE_EQ(bound_value("3", flat), 0.0);
}

TEST(Bounds, EtcTripleValue) {
  const double T = 8000.0, K = 2.0;
  EXPECT_NEAR(bound_value("10", inputs(2, 8000)), 3.0 * std::cbrt(T * T) * std::cbrt(K * std::log(K)), 1e-9);
  // 3 * 400 * cbrt(2 ln 2)
  EXPECT_NEAR(bound_value("10", inputs(2, 8000)), 1200.0 * std::cbrt(2.0 * std::log(2.0)), 1e-9);
}

TEST(Bounds, LazyEwaValue) {
  const double T = 4000.0, K = 2.0;
  const double expected = 3.0 * std::cbrt(std::pow(2.0 * T * K, 2.0)) * std::cbrt(std::log(K * K * (T - 1.0)));
  EXPECT_NEAR(bound_value("11", inputs(2, 4000)), expected, 1e-9);
}

TEST(Bounds, Exp3CouponValues) {
  const double T = 1e4, K = 3.0;
  const double base = 4.0 * std::sqrt(T * K * std::log(K)) + K;
  EXPECT_NEAR(bound_value("6", inputs(3, 10000)), base, 1e-9);
  const auto in = inputs(3, 10000, {}, {FidelitySpec::coupon(10000, 2, 0.6), FidelitySpec::coupon(10000, 3, 0.6),
                                        FidelitySpec::coupon(10000, 4, 0.6)});
  EXPECT_NEAR(bound_value("6_strong", in), base + 12.0, 1e-9);
}

TEST(Bounds, UcbIncreasingHandComputed) {
  // scores 0.9 + 0.5 and 0.7 + 0.25 with f(n) = n/T: gap 0.45, spread 0.2 + f_best(T) = 1.2
  const std::size_t T = 100;
  std::vector<double> lin(T);
  for (std::size_t n = 1; n <= T; ++n) lin[n - 1] = static_cast<double>(n) / T;
  std::vector<double> half(T);
  for (std::size_t n = 1; n <= T; ++n) half[n - 1] = 0.5 * static_cast<double>(n) / T;
  const auto in = inputs(2, T, {0.9, 0.7},
                         {FidelitySpec::tabular(T, lin, Family::Increasing), FidelitySpec::tabular(T, half, Family::Increasing)});
  const double F1 = (T + 1.0) / (2.0 * T);  // F_1(T)/T
  const double F2 = 0.5 * F1;
  const double gap = 0.9 + F1 - 0.7 - F2;
  const double expected = 16.0 * std::log(200.0) / (gap * gap) * (0.2 + 1.0) + 0.5;
  EXPECT_NEAR(bound_value("2", in), expected, 1e-9);
}

TEST(Bounds, UcbIncreasingTiedArmsContributeNothing) {
  const std::size_t T = 50;
  const auto in = inputs(3, T, {0.5, 0.5, 0.5}, SpecList(3, FidelitySpec::zero(T)));
  EXPECT_DOUBLE_EQ(bound_value("2", in), 1.0 / 3.0);
}

TEST(Bounds, CouponUcbBounds) {
  const std::size_t T = 20000;
  const SpecList specs{FidelitySpec::coupon(T, 2, 0.4), FidelitySpec::coupon(T, 3, 0.3), FidelitySpec::coupon(T, 1, 0.0)};
  const std::vector<double> mu{0.5, 0.4, 0.3};
  // augmented means 0.7, 0.5, 0.3
  const double g1 = 0.2, g2 = 0.4;
  EXPECT_NEAR(bound_value("5", inputs(3, T, mu, specs)), 16.0 * std::log(T) * (1 / g1 + 1 / g2) + 12.0, 1e-6);
  const double K = 3.0;
  const double expected12 = 16.0 * std::log(T * K) * (1 / g1 + 1 / g2) + (3.0 * g1 + 1.0 * g2) +
                            (1.0 + 2.0 / K) * (g1 + g2) + 2.0 * 6.0;
  EXPECT_NEAR(bound_value("12", inputs(3, T, mu, specs)), expected12, 1e-6);
  const auto counts = bounds::batch_ucb_play_counts(mu, specs, T);
  EXPECT_FALSE(counts[0].has_value());
  EXPECT_NEAR(*counts[1], 16.0 * std::log(T * K) / (g1 * g1) + 3.0 + 1.0 + 2.0 / K, 1e-6);
}

TEST(Bounds, Exp4Printed) {
  const double T = 2000.0, K1 = 3.0;
  const double expected = K1 * std::sqrt(2 * T) * (0.5 * std::sqrt(std::log(K1)) + 1.0 + std::sqrt(std::log(std::sqrt(2 * T) / K1)));
  EXPECT_NEAR(bound_value("4", inputs(2, 2000)), expected, 1e-9);
}

TEST(Bounds, Exp4GridNeedsSize) {
  EXPECT_THROW(bound_value("4_grid", inputs(2, 2000)), std::invalid_argument);
  auto in = inputs(2, 2000);
  in.grid_size = 45;
  EXPECT_GT(bound_value("4_grid", in), 0.0);
  in.grid_size = 450;
  auto small = in;
  small.grid_size = 45;
  EXPECT_GT(bound_value("4_grid", in), bound_value("4_grid", small));
}

TEST(Bounds, UnknownIdsAndMissingInputs) {
  EXPECT_THROW(bound_value("7", inputs(2, 100)), std::invalid_argument);
  EXPECT_THROW(theorem_description("99"), std::invalid_argument);
  EXPECT_THROW(bound_value("2", inputs(2, 100)), std::invalid_argument);
  EXPECT_THROW(bound_value("10", inputs(0, 100)), std::invalid_argument);
  for (const auto& id : theorem_ids()) EXPECT_FALSE(theorem_description(id).empty());
}

TEST(Bounds, PolicyTheoremMap) {
  EXPECT_EQ(theorem_for_policy("lazy_ewa"), "11");
  EXPECT_EQ(theorem_for_policy("exp4_cover"), "4_grid");
  EXPECT_FALSE(theorem_for_policy("baseline_ucb").has_value());
}

TEST(Bounds, LazyEwaWorkedValue) {
  const double expected = 3.0 * std::pow(2.0 * 5000.0 * 2.0, 2.0 / 3.0) * std::cbrt(std::log(4.0 * 4999.0));
  EXPECT_NEAR(bound_value("11", inputs(2, 5000)), expected, 1e-9);
}
