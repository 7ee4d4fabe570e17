#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace focklab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

// ln(e^a + e^b)
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf || a == kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

inline double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf || hi == kInf) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

// ln(1 + e^x)
inline double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// Signed real number carried as a sign and a natural-log magnitude, so that
/// quantities such as e^{e^{10}} can be combined without overflow.
struct LogValue {
  int sign = 0;
  double log_abs = kNegInf;

  static LogValue zero() { return {}; }
  static LogValue from_log(double log_abs) { return {log_abs == kNegInf ? 0 : 1, log_abs}; }
  static LogValue from_double(double v) {
    if (v == 0.0) return {};
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
  }

  bool is_zero() const { return sign == 0; }
  bool positive() const { return sign > 0; }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  LogValue operator-() const { return {-sign, log_abs}; }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log_abs + b.log_abs};
  }

  // Division by zero yields an infinite magnitude; callers decide whether that is an error.
  friend LogValue operator/(LogValue a, LogValue b) {
    if (a.sign == 0) return {};
    if (b.sign == 0) return {a.sign, kInf};
    return {a.sign * b.sign, a.log_abs - b.log_abs};
  }

  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    if (a.sign == b.sign) return {a.sign, log_add(a.log_abs, b.log_abs)};
    if (a.log_abs < b.log_abs) std::swap(a, b);
    const double d = b.log_abs - a.log_abs;
    if (d == 0.0) return {};
    return {a.sign, a.log_abs + std::log1p(-std::exp(d))};
  }

  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }
};

}  // namespace focklab
