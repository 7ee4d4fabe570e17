#include <gtest/gtest.h>

#include <cmath>

#include "focklab/local_estimates.hpp"

namespace {

using namespace focklab;

// Frozen from a deterministic run.
constexpr double kZ8GaussianRatio = 0.31878151799350779;

TEST(DiskIntegral, ConstantAndMonomial) {
  const auto one = log_disk_integral([](cplx) { return 0.0; }, cplx(2, 1), 0.5);
  EXPECT_TRUE(one.converged);
  EXPECT_NEAR(one.log_value, std::log(kPi * 0.25), 1e-12);
  // int_{D(0, rho)} |z|^2 dm = pi rho^4 / 2
  const auto sq = log_disk_integral([](cplx u) { return 2 * std::log(std::abs(u)); }, cplx(0, 0), 1.5);
  EXPECT_NEAR(sq.log_value, std::log(kPi * std::pow(1.5, 4) / 2), 1e-10);
  // mean value property: the disk mean of |z - a|^2 about a shifted center c is |c - a|^2 + rho^2 / 2
  const cplx a(0.3, -0.2), c(1, 1);
  const auto sh = log_disk_integral([a](cplx u) { return 2 * std::log(std::abs(u - a)); }, c, 0.4);
  EXPECT_NEAR(sh.log_value, std::log(kPi * 0.16 * (std::norm(c - a) + 0.08)), 1e-10);
  EXPECT_THROW(log_disk_integral([](cplx) { return 0.0; }, 0.0, 0.0), InvalidParameter);
}

TEST(SubharmonicRatio, ConstantFunctionUnweighted) {
  LocalParams lp;
  lp.beta = 0;
  for (const char* s : {"power:4", "gaussian", "superexp:1"})
    for (cplx z : {cplx(0, 0), cplx(1, 1), cplx(2.5, 0)})
      EXPECT_NEAR(subharmonic_mean_ratio(EntireFunction::constant(1.0), Weight::parse(s), 2, lp, z), 1 / kPi, 1e-12);
}

TEST(SubharmonicRatio, ZeroOfF) {
  EXPECT_EQ(subharmonic_mean_ratio(EntireFunction::monomial(1), Weight::power(4), 2, {}, 0.0), 0.0);
}

TEST(SubharmonicRatio, GaussianZ8Baseline) {
  LocalParams lp;
  lp.beta = 2;
  const double r = subharmonic_mean_ratio(EntireFunction::monomial(8), Weight::gaussian(), 2, lp, 3.0);
  EXPECT_NEAR(r, kZ8GaussianRatio, 1e-12);
  EXPECT_EQ(subharmonic_mean_ratio(EntireFunction::monomial(8), Weight::gaussian(), 2, lp, cplx(0, 3)), r);
}

TEST(SubharmonicRatio, SubharmonicWithoutWeight) {
  // beta = 0: |f|^p is subharmonic, so the value at the center is at most the disk mean.
  LocalParams lp;
  lp.beta = 0;
  const EntireFunction f({cplx(1, 1), cplx(-2, 0), cplx(0, 0.5), cplx(1, 0)});
  for (double p : {0.5, 1.0, 2.0, 3.0})
    for (cplx z : {cplx(0.2, 0.1), cplx(1, -1), cplx(2, 2)})
      EXPECT_LE(subharmonic_mean_ratio(f, Weight::power(4), p, lp, z), 1 / kPi * (1 + 1e-9)) << p << " " << z;
}

TEST(SubharmonicRatio, Preconditions) {
  EXPECT_THROW(subharmonic_mean_ratio(EntireFunction(), Weight::power(4), 2, {}, 1.0), InvalidParameter);
  EXPECT_THROW(subharmonic_mean_ratio(EntireFunction::monomial(1), Weight::power(4), kInf, {}, 1.0), InvalidParameter);
  LocalParams bad;
  bad.sigma = 0;
  EXPECT_THROW(subharmonic_mean_ratio(EntireFunction::monomial(1), Weight::power(4), 2, bad, 1.0), InvalidParameter);
}

TEST(SubharmonicRatio, SampleRadiusKeepsExponentModerate) {
  const LocalParams lp;
  for (const char* s : {"power:4", "exp:1", "superexp:1"}) {
    const auto w = Weight::parse(s);
    const double r = subharmonic_sample_radius(w, lp);
    EXPECT_GT(r, 0.0) << s;
    EXPECT_LE(lp.sigma * lp.beta * w.psi_prime(r) * w.tau(r), 30.0) << s;
  }
  EXPECT_EQ(subharmonic_sample_radius(Weight::gaussian(), lp), 10.0);
}

TEST(TauComparability, GaussianIsExact) {
  const auto t = tau_comparability(Weight::gaussian(), 0.1, 50);
  EXPECT_EQ(t.max_ratio, 1.0);
  EXPECT_EQ(t.min_ratio, 1.0);
}

TEST(TauComparability, BuiltinsWithinFactorTwoAndTighteningInSigma) {
  for (const char* s : {"power:3", "power:4", "exp:1", "superexp:1"}) {
    const auto w = Weight::parse(s);
    double prev_max = kInf, prev_min = 0.0;
    for (double sigma : {0.2, 0.1, 0.05}) {
      const auto t = tau_comparability(w, sigma, 101);
      if (sigma == 0.1) {
        EXPECT_GE(t.min_ratio, 0.5) << s;
        EXPECT_LE(t.max_ratio, 2.0) << s;
      }
      EXPECT_LT(t.max_ratio, prev_max) << s << " sigma " << sigma;
      EXPECT_GT(t.min_ratio, prev_min) << s << " sigma " << sigma;
      prev_max = t.max_ratio;
      prev_min = t.min_ratio;
    }
  }
}

TEST(TauComparability, Preconditions) {
  EXPECT_THROW(tau_comparability(Weight::power(4), 0.6, 10), InvalidParameter);
  EXPECT_THROW(tau_comparability(Weight::power(4), 0.1, 1), InvalidParameter);
}

TEST(DiskEquivalence, ConstantEqualExponents) {
  const auto r = disk_equivalence_check(0, Weight::power(4), 2, 2, 0.1);
  EXPECT_EQ(r.side_a.classification, Growth::Bounded);
  EXPECT_EQ(r.side_b.classification, Growth::Bounded);
  EXPECT_TRUE(r.agree);
}

TEST(DiskEquivalence, Power4ExponentOracle) {
  // tau ~ 1 / (4 r) for psi = r^4, so both sides grow like r^{k + 2/p - 2/q}.
  for (int k : {0, 1, 3, 6})
    for (auto [p, q] : {std::pair{2.0, 2.0}, {2.0, 4.0}, {1.0, 4.0}, {4.0, 2.0}, {3.0, 1.5}}) {
      const auto r = disk_equivalence_check(k, Weight::power(4), p, q, 0.1);
      const double e = k + 2 / p - 2 / q;
      EXPECT_NEAR(r.side_a.tail_slope, e, 1e-4) << k << " " << p << " " << q;
      EXPECT_NEAR(r.side_b.tail_slope, e, 1e-4) << k << " " << p << " " << q;
      const Growth want = e > 0.05 ? Growth::Divergent : (e < -0.05 ? Growth::Vanishing : Growth::Bounded);
      EXPECT_EQ(r.side_a.classification, want);
      EXPECT_TRUE(r.agree);
    }
}

TEST(DiskEquivalence, SidesAgreeOnOtherWeights) {
  for (const char* s : {"power:3", "exp:1"})
    for (int k : {0, 2})
      EXPECT_TRUE(disk_equivalence_check(k, Weight::parse(s), 2, 4, 0.1).agree) << s << " k=" << k;
}

TEST(DiskEquivalence, Preconditions) {
  EXPECT_THROW(disk_equivalence_check(-1, Weight::power(4), 2, 2, 0.1), InvalidParameter);
  EXPECT_THROW(disk_equivalence_check(1, Weight::power(4), kInf, 2, 0.1), InvalidParameter);
}

}  // namespace
