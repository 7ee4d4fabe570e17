#pragma once

// V_g f = int_0^z f g',  I_g f = int_0^z f' g,  M_g f = g f,  D f = f'
// on truncated power series. Products keep full degree deg f + deg g.

#include <algorithm>
#include <cmath>
#include <vector>

#include "focklab/entire.hpp"

namespace focklab {

namespace detail {

inline std::vector<cplx> cauchy(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Coefficient n >= 1 of int_0^z (a b) is (1/n) sum_{j+k=n-1} a_j b_k.
inline EntireFunction integrate_product(const EntireFunction& a, const EntireFunction& b) {
  const auto prod = cauchy(a.coefficients(), b.coefficients());
  std::vector<cplx> v(prod.size() + 1);
  for (std::size_t n = 1; n < v.size(); ++n) v[n] = prod[n - 1] / static_cast<double>(n);
  return EntireFunction(std::move(v));
}

}  // namespace detail

inline EntireFunction volterra(const EntireFunction& g, const EntireFunction& f) {
  return detail::integrate_product(f, g.derivative());
}

inline EntireFunction companion(const EntireFunction& g, const EntireFunction& f) {
  return detail::integrate_product(f.derivative(), g);
}

inline EntireFunction multiply(const EntireFunction& g, const EntireFunction& f) {
  return EntireFunction(detail::cauchy(g.coefficients(), f.coefficients()));
}

inline EntireFunction differentiate_op(const EntireFunction& f) { return f.derivative(); }

inline EntireFunction add(const EntireFunction& a, const EntireFunction& b) {
  std::vector<cplx> v(std::max(a.coefficients().size(), b.coefficients().size()));
  for (std::size_t k = 0; k < a.coefficients().size(); ++k) v[k] += a.coefficients()[k];
  for (std::size_t k = 0; k < b.coefficients().size(); ++k) v[k] += b.coefficients()[k];
  return EntireFunction(std::move(v));
}

inline EntireFunction subtract(const EntireFunction& a, const EntireFunction& b) { return add(a, b.scaled(-1.0)); }

/// max_n |(V_g f + I_g f - M_g f + f(0) g(0))_n|; zero in exact arithmetic.
inline double parts_identity_residual(const EntireFunction& g, const EntireFunction& f) {
  const EntireFunction vf = volterra(g, f), if_ = companion(g, f), mf = multiply(g, f);
  const auto& v = vf.coefficients();
  const auto& i = if_.coefficients();
  const auto& m = mf.coefficients();
  const std::size_t n = std::max({v.size(), i.size(), m.size()});
  auto at = [](const std::vector<cplx>& c, std::size_t k) { return k < c.size() ? c[k] : cplx{}; };
  double res = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = at(v, k) + at(i, k) - at(m, k);
    if (k == 0) s += f.at_zero() * g.at_zero();
    res = std::max(res, std::abs(s));
  }
  return res;
}

}  // namespace focklab
