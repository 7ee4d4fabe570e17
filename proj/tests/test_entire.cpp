#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "focklab/entire.hpp"

namespace {

using namespace focklab;

std::vector<cplx> random_coeffs(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<cplx> v(n);
  for (auto& c : v) c = {u(gen), u(gen)};
  return v;
}

TEST(Hdr, ProductIsAssociativeAcrossHugeMagnitudes) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> lg(-4000 * kLn2, 4000 * kLn2), ang(-kPi, kPi);
  for (int i = 0; i < 2000; ++i) {
    const auto a = HDRComplex::from_polar_log(lg(gen), ang(gen));
    const auto b = HDRComplex::from_polar_log(lg(gen), ang(gen));
    const auto c = HDRComplex::from_polar_log(lg(gen), ang(gen));
    const auto x = (a * b) * c, y = a * (b * c);
    EXPECT_EQ(x.exponent(), y.exponent());
    EXPECT_LE(std::abs(x.significand() - y.significand()), 4 * std::ldexp(1.0, -52));
  }
}

TEST(Hdr, LogAbsRoundTrip) {
  for (double l : {-3000.0, -1.0, 0.0, 2.5, 1e5}) EXPECT_NEAR(HDRComplex::from_polar_log(l, 0.3).log_abs(), l, 1e-12 * std::max(1.0, std::abs(l)));
  EXPECT_EQ(HDRComplex().log_abs(), kNegInf);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(EntireFunction({1.0, 1.0}), 2.0).to_complex(), cplx(3.0));
  const auto z10 = EntireFunction::monomial(10);
  EXPECT_EQ(std::abs(evaluate(z10, 10.0).to_complex()), 1e10);
  const auto e = EntireFunction::truncated_exp(1, 30);
  const auto ev = evaluate_with_bound(e, 3.0);
  const double exact = std::exp(3.0);
  const double tail = std::exp(e.tail_log_bound(3.0));
  // Terms 0..29 are kept; the bound sits between the first omitted term and a geometric majorant.
  const double first = std::pow(3.0, 30) / std::tgamma(31.0);
  EXPECT_GE(tail, first);
  EXPECT_LE(tail, first / (1 - 3.0 / 31));
  EXPECT_NEAR(ev.value.to_complex().real(), exact, 1e-14 * exact + tail);
}

TEST(Evaluate, AgreesWithPlainHorner) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 300; ++i) {
    const EntireFunction f(random_coeffs(gen, 1 + gen() % 40));
    const cplx z(u(gen), u(gen));
    cplx h = 0;
    for (auto it = f.coefficients().rbegin(); it != f.coefficients().rend(); ++it) h = h * z + *it;
    const cplx v = evaluate(f, z).to_complex();
    EXPECT_LE(std::abs(v - h), 1e-12 * std::max(std::abs(h), 1e-300) * 1e2 + evaluate_with_bound(f, z).relative_error_bound * std::abs(h));
  }
}

TEST(Evaluate, LargeArgumentDoesNotOverflow) {
  const auto f = EntireFunction::monomial(400);
  EXPECT_NEAR(evaluate(f, 1e3).log_abs(), 400 * std::log(1e3), 1e-9);
}

TEST(Series, DerivativeAndAntiderivative) {
  const auto d = EntireFunction::monomial(3).derivative();
  ASSERT_EQ(d.degree(), 2u);
  EXPECT_EQ(d.coefficients()[2], cplx(3.0));
  const auto a = EntireFunction::constant(1.0).antiderivative();
  ASSERT_EQ(a.degree(), 1u);
  EXPECT_EQ(a.coefficients()[0], cplx(0.0));
  EXPECT_EQ(a.coefficients()[1], cplx(1.0));
}

TEST(Series, DerivativeUndoesAntiderivative) {
  std::mt19937_64 gen(9);
  const double ulp = std::ldexp(1.0, -52);
  for (int i = 0; i < 500; ++i) {
    const EntireFunction f(random_coeffs(gen, 1 + gen() % 64));
    const EntireFunction back = f.antiderivative().derivative();
    ASSERT_EQ(back.degree(), f.degree());
    for (std::size_t k = 0; k <= f.degree(); ++k)
      EXPECT_LE(std::abs(back.coefficients()[k] - f.coefficients()[k]), 2 * ulp * std::abs(f.coefficients()[k]));
  }
}

TEST(Series, TruncatedExpTailBound) {
  const auto e = EntireFunction::truncated_exp(1, 64);
  const auto ev = evaluate(e, 10.0);
  EXPECT_NEAR(ev.log_abs(), 10.0, 1e-13);
  EXPECT_LT(e.tail_log_bound(10.0), 10.0 - std::log(1e12));
  EXPECT_EQ(EntireFunction::monomial(4).tail_log_bound(100.0), kNegInf);
}

TEST(WeightedLogModulus, Examples) {
  EXPECT_EQ(weighted_log_modulus(EntireFunction::constant(1.0), Weight::power(4), 0.0), 0.0);
  EXPECT_NEAR(weighted_log_modulus(EntireFunction::monomial(4), Weight::gaussian(), cplx(0, 2)), 4 * std::log(2.0) - 2, 1e-14);
  const double v = weighted_log_modulus(EntireFunction::monomial(1), Weight::super_exp(1), 3.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, std::log(3.0) - std::exp(std::exp(3.0)), 1e-6 * std::abs(v));
  EXPECT_EQ(weighted_log_modulus(EntireFunction::monomial(2), Weight::power(4), 0.0), kNegInf);
}

TEST(ClassicalKernel, PeakAtParameter) {
  const cplx w(1.5, -0.5);
  const ClassicalKernel k(w);
  EXPECT_NEAR(k.weighted_log_abs(w), 0.0, 1e-14);
  double best = kNegInf;
  cplx arg;
  for (double x = -4; x <= 4; x += 0.05)
    for (double y = -4; y <= 4; y += 0.05) {
      const double v = k.weighted_log_abs({x, y});
      if (v > best) best = v, arg = {x, y};
    }
  EXPECT_LE(best, 1e-14);
  EXPECT_LT(std::abs(arg - w), 0.05);
}

TEST(ClassicalKernel, SeriesMatchesClosedForm) {
  const ClassicalKernel k({0.8, 0.6});
  const auto s = k.series(64);
  for (cplx z : {cplx(1, 1), cplx(-2, 0.5), cplx(0, 0)})
    EXPECT_NEAR(evaluate(s, z).log_abs(), k.log_abs(z), 1e-12);
}

}  // namespace
