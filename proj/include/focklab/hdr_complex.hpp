#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "focklab/log_value.hpp"

namespace focklab {

using cplx = std::complex<double>;

/// Complex number with an explicit 64-bit binary exponent: value = s * 2^e with
/// |s| in [1, 2) or s == 0. Products of magnitudes far outside the double range
/// stay representable.
class HDRComplex {
 public:
  HDRComplex() = default;
  HDRComplex(cplx s, std::int64_t e = 0) : s_(s), e_(e) { normalize(); }  // NOLINT: implicit from complex

  static HDRComplex from_polar_log(double log_abs, double arg) {
    if (log_abs == kNegInf) return {};
    const double l2 = log_abs / kLn2;
    const double fl = std::floor(l2);
    HDRComplex h;
    h.s_ = std::polar(std::exp2(l2 - fl), arg);
    h.e_ = static_cast<std::int64_t>(fl);
    h.normalize();
    return h;
  }

  const cplx& significand() const { return s_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return s_ == cplx{}; }

  double log_abs() const {
    if (is_zero()) return kNegInf;
    return std::log(std::abs(s_)) + static_cast<double>(e_) * kLn2;
  }
  double arg() const { return std::arg(s_); }

  /// Plain complex value; overflows to inf or underflows to 0 outside the double range.
  cplx to_complex() const {
    if (is_zero()) return {};
    if (e_ > 2000) return {s_.real() * kInf, s_.imag() * kInf};
    if (e_ < -2000) return {};
    return {std::ldexp(s_.real(), static_cast<int>(e_)), std::ldexp(s_.imag(), static_cast<int>(e_))};
  }

  friend HDRComplex operator*(const HDRComplex& a, const HDRComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return HDRComplex(a.s_ * b.s_, a.e_ + b.e_);
  }
  friend HDRComplex operator/(const HDRComplex& a, const HDRComplex& b) {
    if (a.is_zero()) return {};
    return HDRComplex(a.s_ / b.s_, a.e_ - b.e_);
  }
  friend HDRComplex operator+(const HDRComplex& a, const HDRComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const HDRComplex& hi = a.e_ >= b.e_ ? a : b;
    const HDRComplex& lo = a.e_ >= b.e_ ? b : a;
    const std::int64_t d = hi.e_ - lo.e_;
    if (d > kAlignLimit) return hi;
    const cplx shifted{std::ldexp(lo.s_.real(), -static_cast<int>(d)), std::ldexp(lo.s_.imag(), -static_cast<int>(d))};
    return HDRComplex(hi.s_ + shifted, hi.e_);
  }
  HDRComplex operator-() const {
    HDRComplex h = *this;
    h.s_ = -h.s_;
    return h;
  }
  friend HDRComplex operator-(const HDRComplex& a, const HDRComplex& b) { return a + (-b); }

  /// Binary powering; exact whenever every intermediate product is exact in double.
  HDRComplex pow(std::uint64_t n) const {
    HDRComplex result(cplx{1.0, 0.0});
    HDRComplex base = *this;
    while (n) {
      if (n & 1U) result = result * base;
      n >>= 1U;
      if (n) base = base * base;
    }
    return result;
  }

 private:
  // Beyond this exponent gap the smaller addend is far below one ulp of the larger one.
  static constexpr std::int64_t kAlignLimit = 1100;

  void normalize() {
    const double m = std::hypot(s_.real(), s_.imag());
    if (m == 0.0 || !std::isfinite(m)) {
      if (m == 0.0) {
        s_ = {};
        e_ = 0;
      }
      return;
    }
    int k = 0;
    std::frexp(m, &k);  // m = f * 2^k, f in [0.5, 1)
    int shift = k - 1;
    s_ = {std::ldexp(s_.real(), -shift), std::ldexp(s_.imag(), -shift)};
    // hypot rounding can leave |s| a hair outside [1, 2)
    const double ms = std::abs(s_);
    if (ms >= 2.0) {
      s_ *= 0.5;
      ++shift;
    } else if (ms < 1.0) {
      s_ *= 2.0;
      --shift;
    }
    e_ += shift;
  }

  cplx s_{};
  std::int64_t e_ = 0;
};

}  // namespace focklab
