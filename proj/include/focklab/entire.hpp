#pragma once

// Entire functions as truncated power series with provenance-tagged tail bounds,
// overflow-safe evaluation, and the normalized classical reproducing kernel.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/hdr_complex.hpp"
#include "focklab/log_value.hpp"
#include "focklab/weights.hpp"

namespace focklab {

// Number of kept terms for series families given without an explicit length.
inline constexpr std::size_t kDefaultSeriesTerms = 64;

/// Where a coefficient vector came from. For TruncatedExp the series is the
/// first `terms` coefficients of scale * e^{lambda z} (up to a polynomial), so the
/// omitted tail is bounded analytically.
struct Provenance {
  enum class Kind { User, Monomial, TruncatedExp };
  Kind kind = Kind::User;
  std::size_t n = 0;        // Monomial degree
  double lambda = 0.0;      // TruncatedExp rate
  std::size_t terms = 0;    // TruncatedExp number of kept terms
  double scale = 1.0;       // TruncatedExp magnitude of the prefactor
};

class EntireFunction {
 public:
  EntireFunction() : c_{cplx{}} {}
  explicit EntireFunction(std::vector<cplx> coeffs, Provenance prov = {}) : c_(std::move(coeffs)), prov_(prov) {
    if (c_.empty()) c_.push_back({});
    for (const auto& x : c_)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw InvalidParameter("non-finite coefficient");
    trim();
  }

  static EntireFunction constant(cplx c) { return EntireFunction({c}); }
  static EntireFunction monomial(std::size_t n, cplx c = 1.0) {
    std::vector<cplx> v(n + 1);
    v[n] = c;
    Provenance p;
    p.kind = c == cplx{} ? Provenance::Kind::User : Provenance::Kind::Monomial;
    p.n = n;
    return EntireFunction(std::move(v), p);
  }
  /// First `terms` Taylor coefficients of e^{lambda z}.
  static EntireFunction truncated_exp(double lambda, std::size_t terms) {
    if (terms == 0) throw InvalidParameter("truncated exponential needs at least one term");
    std::vector<cplx> v(terms);
    double c = 1.0;
    for (std::size_t k = 0; k < terms; ++k) {
      v[k] = c;
      c *= lambda / static_cast<double>(k + 1);
    }
    Provenance p;
    p.kind = Provenance::Kind::TruncatedExp;
    p.lambda = lambda;
    p.terms = terms;
    return EntireFunction(std::move(v), p);
  }

  const std::vector<cplx>& coefficients() const { return c_; }
  std::size_t degree() const { return c_.size() - 1; }
  const Provenance& provenance() const { return prov_; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == cplx{}; }
  bool is_constant() const { return c_.size() == 1; }
  cplx at_zero() const { return c_[0]; }

  /// ln of an upper bound for the omitted tail sum_{k >= terms} |scale| |lambda R|^k / k!
  /// (-inf when nothing was truncated).
  double tail_log_bound(double R) const {
    if (prov_.kind != Provenance::Kind::TruncatedExp || prov_.lambda == 0.0) return kNegInf;
    const double x = std::abs(prov_.lambda) * R;
    const double T = static_cast<double>(prov_.terms);
    if (x == 0) return kNegInf;
    const double lead = std::log(std::abs(prov_.scale)) + T * std::log(x) - std::lgamma(T + 1);
    if (x >= T + 1) return kInf;
    return lead - std::log1p(-x / (T + 1));
  }

  EntireFunction derivative() const {
    if (c_.size() == 1) return EntireFunction();
    std::vector<cplx> v(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * static_cast<double>(k);
    Provenance p = prov_;
    if (p.kind == Provenance::Kind::Monomial) {
      p.n = p.n - 1;
    } else if (p.kind == Provenance::Kind::TruncatedExp) {
      p.scale *= p.lambda;
      if (p.terms <= 1) p = {};
      else --p.terms;
    }
    return EntireFunction(std::move(v), p);
  }

  EntireFunction antiderivative() const {
    std::vector<cplx> v(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) v[k + 1] = c_[k] / static_cast<double>(k + 1);
    Provenance p = prov_;
    if (is_zero()) {
      p = {};
    } else if (p.kind == Provenance::Kind::Monomial) {
      p.n = p.n + 1;
    } else if (p.kind == Provenance::Kind::TruncatedExp) {
      if (p.lambda == 0.0) p = {};
      else {
        p.scale /= p.lambda;
        ++p.terms;
      }
    }
    return EntireFunction(std::move(v), p);
  }

  EntireFunction scaled(cplx a) const {
    std::vector<cplx> v = c_;
    for (auto& x : v) x *= a;
    Provenance p = prov_;
    if (a == cplx{}) p = {};
    else if (p.kind == Provenance::Kind::TruncatedExp) p.scale *= std::abs(a);
    return EntireFunction(std::move(v), p);
  }

  /// ln max over |z| = R of sum |c_k| R^k, an upper bound for ln max |f| on that circle.
  double log_coefficient_bound(double R) const {
    std::vector<double> t;
    t.reserve(c_.size());
    const double lr = std::log(R);
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != cplx{}) t.push_back(std::log(std::abs(c_[k])) + (k == 0 ? 0.0 : static_cast<double>(k) * lr));
    return log_sum_exp(t);
  }

 private:
  void trim() {
    while (c_.size() > 1 && c_.back() == cplx{}) c_.pop_back();
    const bool single = c_.back() != cplx{} &&
                        std::all_of(c_.begin(), c_.end() - 1, [](const cplx& x) { return x == cplx{}; });
    if (prov_.kind == Provenance::Kind::User && single) {
      prov_.kind = Provenance::Kind::Monomial;
      prov_.n = c_.size() - 1;
    }
    if (prov_.kind == Provenance::Kind::Monomial) {
      const bool mono = c_.size() == prov_.n + 1 &&
                        std::all_of(c_.begin(), c_.end() - 1, [](const cplx& x) { return x == cplx{}; }) &&
                        c_.back() != cplx{};
      if (!mono) prov_ = {};
    }
  }

  std::vector<cplx> c_;
  Provenance prov_;
};

struct Evaluation {
  HDRComplex value;
  double relative_error_bound = 0.0;  // N * eps * condition number
};

namespace detail {

inline HDRComplex horner_hdr(const std::vector<cplx>& c, const HDRComplex& z) {
  HDRComplex acc(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + HDRComplex(c[k]);
  return acc;
}

inline cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// Below this log-magnitude a double Horner pass can neither overflow nor lose
// the result to underflow of every term.
inline constexpr double kPlainHornerLogLimit = 600.0;

}  // namespace detail

/// Overflow-safe evaluation with an a-priori rounding bound.
inline Evaluation evaluate_with_bound(const EntireFunction& f, cplx z) {
  const auto& c = f.coefficients();
  Evaluation out;
  if (f.provenance().kind == Provenance::Kind::Monomial) {
    out.value = HDRComplex(c.back()) * HDRComplex(z).pow(f.degree());
    out.relative_error_bound = static_cast<double>(std::max<std::size_t>(1, f.degree())) * std::numeric_limits<double>::epsilon();
    return out;
  }
  const double r = std::abs(z);
  const double log_bound = r == 0 ? (c[0] == cplx{} ? kNegInf : std::log(std::abs(c[0]))) : f.log_coefficient_bound(r);
  if (std::abs(log_bound) < detail::kPlainHornerLogLimit) out.value = HDRComplex(detail::horner(c, z));
  else out.value = detail::horner_hdr(c, HDRComplex(z));
  const double cond_log = log_bound - out.value.log_abs();
  out.relative_error_bound = static_cast<double>(std::max<std::size_t>(1, f.degree())) *
                             std::numeric_limits<double>::epsilon() * std::exp(std::min(cond_log, 700.0));
  return out;
}

inline HDRComplex evaluate(const EntireFunction& f, cplx z) { return evaluate_with_bound(f, z).value; }

/// ln|f(z)| - psi(|z|); -inf where f vanishes.
inline double weighted_log_modulus(const EntireFunction& f, const Weight& w, cplx z) {
  const double lf = evaluate(f, z).log_abs();
  if (lf == kNegInf) return kNegInf;
  return lf - w.psi(std::abs(z));
}

/// k_w(z) = exp(z * conj(w) - |w|^2 / 2), so that |k_w(z)| e^{-|z|^2/2} = e^{-|z-w|^2/2}.
class ClassicalKernel {
 public:
  explicit ClassicalKernel(cplx w) : w_(w) {}
  cplx parameter() const { return w_; }

  double log_abs(cplx z) const { return (z * std::conj(w_)).real() - 0.5 * std::norm(w_); }
  double weighted_log_abs(cplx z) const { return log_abs(z) - 0.5 * std::norm(z); }
  HDRComplex value(cplx z) const {
    const cplx e = z * std::conj(w_);
    return HDRComplex::from_polar_log(e.real() - 0.5 * std::norm(w_), e.imag());
  }

  /// Taylor coefficients e^{-|w|^2/2} conj(w)^n / n!, n < terms.
  EntireFunction series(std::size_t terms) const {
    if (terms == 0) throw InvalidParameter("kernel series needs at least one term");
    std::vector<cplx> v(terms);
    cplx c = std::exp(-0.5 * std::norm(w_));
    for (std::size_t n = 0; n < terms; ++n) {
      v[n] = c;
      c *= std::conj(w_) / static_cast<double>(n + 1);
    }
    Provenance p;
    if (w_ != cplx{}) {
      p.kind = Provenance::Kind::TruncatedExp;
      p.lambda = std::abs(w_);
      p.terms = terms;
      p.scale = std::exp(-0.5 * std::norm(w_));
    }
    return EntireFunction(std::move(v), p);
  }

 private:
  cplx w_;
};

}  // namespace focklab
