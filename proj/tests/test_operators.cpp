#include <gtest/gtest.h>

#include <random>

#include "focklab/operators.hpp"

namespace {

using namespace focklab;

EntireFunction poly(std::initializer_list<cplx> c) { return EntireFunction(std::vector<cplx>(c)); }

void expect_coeffs(const EntireFunction& f, std::initializer_list<cplx> c, double tol = 1e-15) {
  const std::vector<cplx> want(c);
  const auto& got = f.coefficients();
  for (std::size_t k = 0; k < std::max(want.size(), got.size()); ++k) {
    const cplx a = k < got.size() ? got[k] : cplx{};
    const cplx b = k < want.size() ? want[k] : cplx{};
    EXPECT_NEAR(std::abs(a - b), 0.0, tol) << "coefficient " << k;
  }
}

EntireFunction random_series(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<cplx> v(1 + gen() % 65);
  for (auto& c : v) c = {u(gen), u(gen)};
  return EntireFunction(std::move(v));
}

double max_coeff_gap(const EntireFunction& a, const EntireFunction& b) {
  double m = 0;
  for (std::size_t k = 0; k < std::max(a.coefficients().size(), b.coefficients().size()); ++k) {
    const cplx x = k < a.coefficients().size() ? a.coefficients()[k] : cplx{};
    const cplx y = k < b.coefficients().size() ? b.coefficients()[k] : cplx{};
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

double max_coeff(const EntireFunction& a) {
  double m = 0;
  for (auto c : a.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

TEST(Volterra, Examples) {
  const auto z = EntireFunction::monomial(1), one = EntireFunction::constant(1.0);
  expect_coeffs(volterra(z, one), {0, 1});
  expect_coeffs(volterra(z, z), {0, 0, 0.5});
  expect_coeffs(volterra(EntireFunction::monomial(2), one), {0, 0, 1});
}

TEST(Companion, Examples) {
  const auto z = EntireFunction::monomial(1), one = EntireFunction::constant(1.0);
  expect_coeffs(companion(one, z), {0, 1});
  expect_coeffs(companion(z, z), {0, 0, 0.5});
  expect_coeffs(companion(EntireFunction::monomial(2), EntireFunction::monomial(3)), {0, 0, 0, 0, 0, 0.6});
}

TEST(Multiply, Examples) {
  const auto z = EntireFunction::monomial(1);
  expect_coeffs(multiply(z, z), {0, 0, 1});
  expect_coeffs(multiply(poly({1, 1}), poly({1, -1})), {1, 0, -1});
  for (std::size_t n = 1; n < 10; ++n) {
    const auto d = differentiate_op(EntireFunction::monomial(n));
    ASSERT_EQ(d.degree(), n - 1);
    EXPECT_EQ(d.coefficients()[n - 1], cplx(static_cast<double>(n)));
  }
}

TEST(Multiply, KeepsFullDegree) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_series(gen), g = random_series(gen);
    EXPECT_EQ(multiply(g, f).degree(), f.degree() + g.degree());
    EXPECT_LE(volterra(g, f).degree(), f.degree() + g.degree());
  }
}

TEST(PartsIdentity, Examples) {
  const auto z = EntireFunction::monomial(1), one = EntireFunction::constant(1.0);
  EXPECT_EQ(parts_identity_residual(z, z), 0.0);
  EXPECT_EQ(parts_identity_residual(one, one), 0.0);
}

TEST(PartsIdentity, RandomPairs) {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_series(gen), g = random_series(gen);
    const EntireFunction m = multiply(g, f);
    EXPECT_LE(parts_identity_residual(g, f), 1e-12 * max_coeff(m));
  }
}

TEST(Volterra, Linearity) {
  std::mt19937_64 gen(23);
  const cplx a(2, -1), b(-0.5, 3);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_series(gen), f = random_series(gen), h = random_series(gen);
    const EntireFunction lhs = volterra(g, add(f.scaled(a), h.scaled(b)));
    const EntireFunction rhs = add(volterra(g, f).scaled(a), volterra(g, h).scaled(b));
    EXPECT_LE(max_coeff_gap(lhs, rhs), 1e-12 * std::max(max_coeff(lhs), 1.0));
  }
}

TEST(Volterra, FundamentalTheorem) {
  std::mt19937_64 gen(29);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_series(gen), f = random_series(gen);
    const EntireFunction lhs = volterra(g, f).derivative();
    const EntireFunction rhs = multiply(g.derivative(), f);
    EXPECT_LE(max_coeff_gap(lhs, rhs), 1e-12 * std::max(max_coeff(rhs), 1.0));
  }
}

TEST(Arithmetic, SubtractCancels) {
  std::mt19937_64 gen(31);
  const auto f = random_series(gen);
  const EntireFunction d = subtract(f, f);
  EXPECT_EQ(max_coeff(d), 0.0);
}

}  // namespace
