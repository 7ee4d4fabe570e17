#include <gtest/gtest.h>

#include <random>

#include "focklab/verification.hpp"

namespace {

using namespace focklab;

class InvariantCheck : public ::testing::TestWithParam<std::size_t> {};

TEST_P(InvariantCheck, Holds) {
  const auto checks = verification::invariant_checks();
  ASSERT_LT(GetParam(), checks.size());
  const auto r = checks[GetParam()]();
  EXPECT_TRUE(r.passed) << r.id << " " << r.title << ": " << r.detail;
  EXPECT_FALSE(r.ops.empty());
}

INSTANTIATE_TEST_SUITE_P(All, InvariantCheck, ::testing::Range<std::size_t>(0, 7),
                         [](const auto& info) { return "P" + std::to_string(info.param + 1); });

TEST(Properties, WeightedModulusIsRotationInvariantForMonomials) {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(0, 6), a(0, 2 * kPi);
  for (const char* s : {"power:4", "exp:1", "superexp:1"}) {
    const auto w = Weight::parse(s);
    for (int i = 0; i < 200; ++i) {
      const auto f = EntireFunction::monomial(gen() % 20);
      const double r = u(gen);
      const double x = weighted_log_modulus(f, w, std::polar(r, a(gen)));
      const double y = weighted_log_modulus(f, w, r);
      EXPECT_NEAR(x, y, 1e-12 * std::max(1.0, std::abs(y)));
    }
  }
}

TEST(Properties, NormsIncreaseWithMonomialDegree) {
  // psi = r^4: ||z^{n+1}||_2 / ||z^n||_2 grows like n^{1/4}.
  double prev = kNegInf;
  for (int n = 4; n <= 30; ++n) {
    const double v = norm(EntireFunction::monomial(n), Weight::power(4), Exponent::finite(2)).log_value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Properties, SupNormDominatesPointValues) {
  std::mt19937_64 gen(103);
  std::uniform_real_distribution<double> c(-1, 1), r(0, 3), a(0, 2 * kPi);
  for (int i = 0; i < 20; ++i) {
    std::vector<cplx> v(1 + gen() % 6);
    for (auto& x : v) x = {c(gen), c(gen)};
    const EntireFunction f(v);
    const auto w = Weight::power(3);
    const double s = norm_sup(f, w).log_value;
    for (int k = 0; k < 50; ++k) EXPECT_LE(weighted_log_modulus(f, w, std::polar(r(gen), a(gen))), s + 1e-12);
  }
}

}  // namespace
