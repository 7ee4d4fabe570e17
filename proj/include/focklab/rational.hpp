#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "focklab/errors.hpp"

namespace focklab {

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms. Used for exponents and degree thresholds.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)), checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw InvalidParameter("rational division by zero");
    return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Exact conversion when x equals n/d with d <= max_den; nullopt otherwise.
  static std::optional<Rational> from_double(double x, std::int64_t max_den = 1000000) {
    if (!std::isfinite(x)) return std::nullopt;
    for (std::int64_t d = 1; d <= max_den; d = d < 1024 ? d + 1 : d * 2) {
      const double n = x * static_cast<double>(d);
      if (std::abs(n) > 9e15) return std::nullopt;
      const double rn = std::nearbyint(n);
      if (rn == n && rn / static_cast<double>(d) == x) return Rational(static_cast<std::int64_t>(rn), d);
    }
    return std::nullopt;
  }

  /// Parses "-12", "2.5" (exact, 5/2) or "3/4".
  static Rational parse(std::string_view s) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
      const Rational a = parse(s.substr(i, slash - i));
      const Rational b = parse(s.substr(slash + 1));
      return neg ? -(a / b) : a / b;
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_dot = false;
    bool any = false;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c == '.' && !seen_dot) {
        seen_dot = true;
        continue;
      }
      if (c < '0' || c > '9') throw InvalidParameter("malformed rational '" + std::string(s) + "'");
      any = true;
      num = checked_add(checked_mul(num, 10), c - '0');
      if (seen_dot) den = checked_mul(den, 10);
    }
    if (!any) throw InvalidParameter("malformed rational '" + std::string(s) + "'");
    return Rational(neg ? -num : num, den);
  }

 private:
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw InvalidParameter("rational overflow");
    return r;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw InvalidParameter("rational overflow");
    return r;
  }
  void normalize() {
    if (den_ == 0) throw InvalidParameter("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace focklab
