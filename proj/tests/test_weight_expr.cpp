#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "focklab/weight_expr.hpp"

namespace {

using namespace focklab;
using namespace focklab::expr;

TEST(WeightExprParse, PowerOfVariable) {
  const auto e = parse("r^4");
  ASSERT_EQ(e->kind, NodeKind::Pow);
  EXPECT_EQ(e->lhs->kind, NodeKind::Var);
  EXPECT_EQ(e->exponent, Rational(4));
}

TEST(WeightExprParse, NestedExp) {
  const auto e = parse("exp(exp(r))");
  ASSERT_EQ(e->kind, NodeKind::Exp);
  ASSERT_EQ(e->lhs->kind, NodeKind::Exp);
  EXPECT_EQ(e->lhs->lhs->kind, NodeKind::Var);
}

TEST(WeightExprParse, UnknownVariable) { EXPECT_THROW(parse("x^2"), UnknownIdentifier); }

TEST(WeightExprParse, Malformed) {
  for (const char* s : {"", "r^", "exp(r", "r + * r", "2 r", "r^(1/0)"}) EXPECT_THROW(parse(s), Error) << s;
}

TEST(WeightExprParse, RationalExponent) {
  const auto e = parse("r^(3/2)");
  ASSERT_EQ(e->kind, NodeKind::Pow);
  EXPECT_EQ(e->exponent, Rational(3, 2));
}

TEST(WeightExprParse, RoundTripsThroughPrinter) {
  for (const char* s : {"r^4", "exp(exp(r))", "exp(r) + r^2", "2*r^3 - r/4", "r^(3/2)", "exp(2*r)/(1 + r)",
                        "(r + 1)^2", "r - (r - 1)", "r/(r/2)"}) {
    const auto a = parse(s);
    const auto b = parse(to_string(a));
    EXPECT_TRUE(structurally_equal(a, b)) << s << " -> " << to_string(a);
  }
}

TEST(WeightExprDifferentiate, PowerRule) { EXPECT_EQ(to_string(differentiate(parse("r^4"))), "4*r^3"); }

TEST(WeightExprDifferentiate, ChainRule) {
  EXPECT_EQ(to_string(differentiate(parse("exp(2*r)"))), "2*exp(2*r)");
  EXPECT_EQ(to_string(differentiate(parse("exp(exp(r))"))), "exp(r)*exp(exp(r))");
}

TEST(WeightExprDifferentiate, SecondDerivativeOfMixedExpression) {
  const auto d2 = differentiate(differentiate(parse("exp(r)+r^2")));
  for (double r : {0.0, 0.5, 1.0, 3.0}) EXPECT_NEAR(evaluate(d2, r), std::exp(r) + 2, 1e-12 * (std::exp(r) + 2));
}

TEST(WeightExprDifferentiate, MatchesCentralDifference) {
  for (const char* s : {"r^4", "exp(r) + r^2", "r^(5/2)", "exp(r/2)*r", "(1 + r^2)/(2 + r)", "exp(exp(r/3))"}) {
    const auto e = parse(s);
    const auto d = differentiate(e);
    for (double r : {0.7, 1.3, 2.9}) {
      const double h = 1e-5;
      const double fd = (evaluate(e, r + h) - evaluate(e, r - h)) / (2 * h);
      EXPECT_NEAR(evaluate(d, r), fd, 1e-6 * std::max(1.0, std::abs(fd))) << s << " at " << r;
    }
  }
}

TEST(WeightExprEvalLog, DoubleExponentialStaysInLogDomain) {
  EXPECT_NEAR(eval_log(parse("exp(exp(r))"), 3.0), std::exp(3.0), 1e-12 * std::exp(3.0));
  // e^{e^7} overflows a double; its log does not.
  EXPECT_NEAR(eval_log(parse("exp(exp(r))"), 7.0), std::exp(7.0), 1e-12 * std::exp(7.0));
}

TEST(WeightExprEvalLog, Power) { EXPECT_NEAR(eval_log(parse("r^4"), 2.0), std::log(16.0), 1e-15); }

TEST(WeightExprEvalLog, NonPositiveValue) { EXPECT_THROW(eval_log(parse("r - 5"), 2.0), NonPositiveValue); }

TEST(WeightExprEvalLog, AgreesWithPlainEvaluation) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  const auto e = parse("exp(r)*r^3 + r/(1 + r^2)");
  for (int i = 0; i < 200; ++i) {
    const double r = u(gen);
    EXPECT_NEAR(eval_log(e, r), std::log(evaluate(e, r)), 1e-12 * std::max(1.0, std::abs(std::log(evaluate(e, r)))));
  }
}

}  // namespace
