#include <gtest/gtest.h>

#include <cmath>

#include "focklab/weights.hpp"

namespace {

using namespace focklab;

// ln tau for psi = e^{e^r}, computed directly in long double.
long double superexp_log_tau(long double r) {
  const long double er = std::exp(r);
  const long double lap = (std::exp(2 * r) + er) * std::exp(er) + std::exp(r + er) / r;
  return -0.5L * std::log1p(lap);
}

TEST(Weights, PowerValues) {
  const auto w = Weight::power(4);
  EXPECT_DOUBLE_EQ(w.psi(2), 16.0);
  EXPECT_DOUBLE_EQ(w.psi_prime(2), 32.0);
  EXPECT_DOUBLE_EQ(w.psi_second(2), 48.0);
}

TEST(Weights, ExpLinearDerivative) {
  const auto w = Weight::exp_linear(1);
  for (double r : {0.0, 1.0, 4.0}) EXPECT_NEAR(w.psi_prime(r), std::exp(r), 1e-14 * std::exp(r));
}

TEST(Weights, ExpressionSecondDerivative) {
  const auto w = Weight::expression("exp(r)+r^2");
  for (double r : {0.5, 1.0, 2.0}) EXPECT_NEAR(w.psi_second(r), std::exp(r) + 2, 1e-12 * (std::exp(r) + 2));
}

TEST(Weights, SuperExpDerivativeIsExact) {
  const auto w = Weight::super_exp(1);
  for (double r : {0.5, 1.0, 2.0}) EXPECT_NEAR(w.psi_prime(r), std::exp(r + std::exp(r)), 1e-13 * w.psi_prime(r));
}

TEST(Weights, InvalidParameters) {
  EXPECT_THROW(Weight::power(0), InvalidParameter);
  EXPECT_THROW(Weight::power(2), InvalidParameter);
  EXPECT_NO_THROW(Weight::power(2, true));
  EXPECT_THROW(Weight::exp_linear(0), InvalidParameter);
  EXPECT_THROW(Weight::super_exp(-1), InvalidParameter);
  EXPECT_THROW(Weight::parse("power"), Error);
  EXPECT_THROW(Weight::parse("cosine:1"), Error);
}

TEST(Weights, ParseSpecRoundTrip) {
  for (const char* s : {"power:4", "exp:1", "superexp:1", "gaussian", "expr:exp(r) + r^2"}) {
    const auto w = Weight::parse(s);
    EXPECT_EQ(Weight::parse(w.spec()).spec(), w.spec()) << s;
  }
}

TEST(Weights, LaplacianExamples) {
  EXPECT_NEAR(Weight::power(4).laplacian(2), 64.0, 1e-12);
  EXPECT_NEAR(Weight::exp_linear(1).laplacian(1), 2 * std::exp(1.0), 1e-12);
  for (double r : {0.0, 1.0, 7.0}) EXPECT_NEAR(Weight::gaussian().laplacian(r), 2.0, 1e-15);
  // r = 0 uses the radial limit 2 psi''(0).
  EXPECT_NEAR(Weight::expression("r^2").laplacian(0), 4.0, 1e-15);
}

TEST(Weights, TauExamples) {
  for (double r : {0.0, 3.0, 50.0}) EXPECT_NEAR(Weight::gaussian().tau(r), 1 / std::sqrt(3.0), 1e-15);
  const auto w = Weight::power(4);
  for (double r : {10.0, 100.0, 1000.0}) {
    const double x = w.tau(r) * std::sqrt(w.laplacian(r));
    EXPECT_NEAR(x, 1.0, 1.0 / w.laplacian(r));
  }
  EXPECT_NEAR(Weight::super_exp(1).log_tau(2), static_cast<double>(superexp_log_tau(2.0L)), 1e-13);
  EXPECT_NEAR(Weight::super_exp(1).log_tau(2), -5.7869431879327546, 1e-13);
}

TEST(Weights, SuperExpLogTauAtLargeRadius) {
  // Delta psi ~ e^{e^6} overflows; ln tau is still finite.
  const double lt = Weight::super_exp(1).log_tau(6);
  EXPECT_TRUE(std::isfinite(lt));
  EXPECT_NEAR(lt, -0.5 * (12 + std::exp(6.0) + std::log1p(std::exp(-6.0) * (1 + 1 / 6.0))), 1e-9);
}

TEST(Weights, TauDecreasingOnBuiltins) {
  for (const char* s : {"power:3", "power:4", "exp:1", "superexp:1"}) {
    const auto w = Weight::parse(s);
    double prev = w.log_tau(1.0);
    for (double r = 1.05; r <= 30.0; r += 0.05) {
      EXPECT_TRUE(w.laplacian_positive(r)) << s << " r=" << r;
      const double cur = w.log_tau(r);
      ASSERT_LT(cur, prev) << s << " r=" << r;
      prev = cur;
    }
  }
}

TEST(Weights, TauPrimeMatchesFiniteDifference) {
  for (const char* s : {"power:4", "exp:1", "expr:r^3 + r^2"}) {
    const auto w = Weight::parse(s);
    for (double r : {0.8, 2.0, 5.0}) {
      const double h = 1e-5 * r;
      const double fd = (w.tau(r + h) - w.tau(r - h)) / (2 * h);
      EXPECT_NEAR(w.tau_prime(r), fd, 1e-6 * std::abs(fd)) << s << " r=" << r;
    }
  }
}

TEST(Weights, TauProfileVanishes) {
  EXPECT_EQ(tau_profile(Weight::power(4), 1000, 60).classification, Growth::Vanishing);
  EXPECT_EQ(tau_profile(Weight::gaussian(), 1000, 60).classification, Growth::Bounded);
}

TEST(Admissibility, BuiltinVerdicts) {
  for (const char* s : {"power:3", "power:4", "exp:1", "superexp:1"}) {
    const auto rep = check_admissibility(Weight::parse(s));
    EXPECT_TRUE(rep.verdict) << s;
    EXPECT_TRUE(rep.faster_than_gaussian) << s;
    EXPECT_TRUE(rep.derivatives_consistent) << s;
  }
  const auto g = check_admissibility(Weight::gaussian());
  EXPECT_FALSE(g.faster_than_gaussian);
  EXPECT_FALSE(g.verdict);
}

TEST(Admissibility, ExtraConditionFound) {
  const auto rep = check_admissibility(Weight::power(4));
  EXPECT_NE(rep.extra_condition, ExtraCondition::Neither);
  EXPECT_LE(rep.large_r0, 10.0);
}

}  // namespace
