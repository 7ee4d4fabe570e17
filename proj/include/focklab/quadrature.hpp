#pragma once

// Log-domain quadrature helpers: Gauss-Legendre rules, adaptive panel
// integration of exp(L(r)), and golden-section maximization.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/log_value.hpp"

namespace focklab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  const double nn = static_cast<double>(n);
  return {p1, nn * (x * p1 - p0) / (x * x - 1)};
}

}  // namespace detail

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule compute_gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidParameter("Gauss-Legendre rule needs n >= 1");
  GaussRule g;
  g.nodes.assign(n, 0.0);
  g.weights.assign(n, 0.0);
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = detail::legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = detail::legendre(n, x).second;
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = w;
    g.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    const double dp = n == 1 ? 1.0 : detail::legendre(n, 0.0).second;
    g.weights[n / 2] = 2.0 / (dp * dp);
  }
  return g;
}

inline const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

/// ln of the n-point Gauss-Legendre approximation of int_a^b exp(L(r)) dr.
template <class LogF>
double gauss_log_integral(const LogF& L, double a, double b, const GaussRule& rule, std::size_t* evals = nullptr) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::vector<double> terms;
  terms.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = L(mid + half * rule.nodes[i]);
    if (v == kNegInf) continue;
    terms.push_back(v + std::log(rule.weights[i]));
  }
  if (evals) *evals += rule.nodes.size();
  if (terms.empty()) return kNegInf;
  return log_sum_exp(terms) + std::log(half);
}

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  int max_depth = 40;
};

/// Adaptive GL-15 on [a, b]: a panel is accepted once the 15-point value and the
/// sum of its two halves differ by at most rel_tol times max(panel, reference),
/// where reference is the log of the mass accumulated so far.
template <class LogF>
double adaptive_log_integral(const LogF& L, double a, double b, double log_reference, const AdaptiveOptions& opt,
                             std::size_t& evals, int depth = 0) {
  const GaussRule& g = gauss_legendre(15);
  const double whole = gauss_log_integral(L, a, b, g, &evals);
  const double m = 0.5 * (a + b);
  const double left = gauss_log_integral(L, a, m, g, &evals);
  const double right = gauss_log_integral(L, m, b, g, &evals);
  const double split = log_add(left, right);
  if (split == kNegInf && whole == kNegInf) return kNegInf;
  if (!std::isfinite(split) && split != kNegInf) throw QuadratureFailure("non-finite panel integral");
  const double diff = (LogValue::from_log(split) - LogValue::from_log(whole)).log_abs;
  const double scale = std::max(split, log_reference);
  if (diff <= std::log(opt.rel_tol) + scale) return split;
  if (depth >= opt.max_depth) return split;
  const double l = adaptive_log_integral(L, a, m, log_add(log_reference, right), opt, evals, depth + 1);
  const double r = adaptive_log_integral(L, m, b, log_add(log_reference, l), opt, evals, depth + 1);
  return log_add(l, r);
}

struct GoldenResult {
  double x = 0.0;
  double value = kNegInf;
};

/// Maximizes F on [a, b] by golden-section search; stops once the bracket is
/// narrower than x_tol. Ties go to the smaller abscissa.
template <class F>
GoldenResult golden_max(const F& f, double a, double b, double x_tol, int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  GoldenResult best{c, fc};
  auto consider = [&](double x, double v) {
    if (v > best.value || (v == best.value && x < best.x)) best = {x, v};
  };
  consider(d, fd);
  for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

}  // namespace focklab
