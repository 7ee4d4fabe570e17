#pragma once

// Norms in F_p^psi (finite p and p = infinity) and their Littlewood-Paley
// counterparts. Every integrand and supremand is handled through its logarithm.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "focklab/entire.hpp"
#include "focklab/errors.hpp"
#include "focklab/growth_profile.hpp"
#include "focklab/log_value.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/weights.hpp"

namespace focklab {

/// A Lebesgue exponent: a positive real or infinity.
class Exponent {
 public:
  Exponent() = default;
  static Exponent finite(double p) {
    if (!(p > 0) || !std::isfinite(p)) throw InvalidParameter("exponent must be a finite positive number");
    Exponent e;
    e.value_ = p;
    return e;
  }
  static Exponent infinity() {
    Exponent e;
    e.value_ = kInf;
    return e;
  }
  /// A number, or one of "inf", "infinity", "∞".
  static Exponent parse(std::string_view s) {
    if (s == "inf" || s == "infinity" || s == "Inf" || s == "\xE2\x88\x9E") return infinity();
    const std::string t(s);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) throw InvalidParameter("malformed exponent '" + t + "'");
    return finite(v);
  }

  bool is_infinite() const { return value_ == kInf; }
  double value() const { return value_; }
  std::string to_string() const { return is_infinite() ? "inf" : expr::detail::format_number(value_); }
  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_ = 2.0;
};

struct NormResult {
  double log_value = kNegInf;
  Exponent p;
  double truncation_radius = 0.0;
  double tail_log_bound = kNegInf;  // ln of the estimated omitted mass of the p-th power integral
  std::size_t nodes = 0;
  bool divergent = false;           // sup search still rising at the radius cap
  double argmax_radius = 0.0;       // sup only
  double argmax_theta = 0.0;        // sup only
};

struct NormOptions {
  double radius_cap = 50.0;
  double cutoff = 92.0;       // stop once the log integrand is this far below its running max
  double rel_tol = 1e-10;
};

// ---------------------------------------------------------------------------
// Angular sampling on circles |z| = r

class AngularSampler {
 public:
  explicit AngularSampler(const EntireFunction& h) : h_(h) {}

  const EntireFunction& function() const { return h_; }

  /// ln |h(r e^{i theta})|
  double log_abs(double r, double theta) const {
    if (h_.is_zero()) return kNegInf;
    return evaluate(h_, std::polar(r, theta)).log_abs();
  }

  /// ln of the mean of |h|^p over M >= 2 deg max(1, ceil p) + 1 equispaced nodes.
  double log_mean_pow(double r, double p) const {
    if (h_.is_zero()) return kNegInf;
    if (monomial_like()) return p * log_abs(r, 0.0);
    const std::size_t m = 2 * h_.degree() * static_cast<std::size_t>(std::max(1.0, std::ceil(p))) + 1;
    const auto vals = circle_log_abs(r, m);
    std::vector<double> t(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) t[i] = p * vals[i];
    return log_sum_exp(t) - std::log(static_cast<double>(m));
  }

  struct Max {
    double log_value = kNegInf;
    double theta = 0.0;
  };

  /// max over theta of ln|h(r e^{i theta})|: node scan, then golden-section refinement.
  Max log_max(double r, bool refine = true) const {
    if (h_.is_zero()) return {};
    if (monomial_like() || r == 0) return {log_abs(r, 0.0), 0.0};
    const std::size_t m = std::max<std::size_t>(2 * h_.degree() + 1, 32);
    const auto vals = circle_log_abs(r, m);
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (vals[i] > vals[best]) best = i;
    const double step = 2 * kPi / static_cast<double>(m);
    Max out{vals[best], step * static_cast<double>(best)};
    if (!refine) return out;
    const auto g = golden_max([&](double th) { return log_abs(r, th); }, out.theta - step, out.theta + step, 1e-9);
    if (g.value > out.log_value) out = {g.value, g.x};
    return out;
  }

 private:
  bool monomial_like() const { return h_.provenance().kind == Provenance::Kind::Monomial || h_.degree() == 0; }

  std::vector<double> circle_log_abs(double r, std::size_t m) const {
    std::vector<double> out(m);
    const auto& c = h_.coefficients();
    const double lb = r > 0 ? h_.log_coefficient_bound(r) : 0.0;
    const bool plain = std::abs(lb) < detail::kPlainHornerLogLimit;
    for (std::size_t j = 0; j < m; ++j) {
      const cplx z = std::polar(r, 2 * kPi * static_cast<double>(j) / static_cast<double>(m));
      out[j] = plain ? std::log(std::abs(detail::horner(c, z))) : detail::horner_hdr(c, HDRComplex(z)).log_abs();
    }
    return out;
  }

  const EntireFunction& h_;
};

// ---------------------------------------------------------------------------
// Radial engines

struct RadialIntegrand {
  double p = 2.0;                                  // power applied to |h|
  std::function<double(double)> log_factor;        // ln of the radial factor at r
  std::function<double(double)> curvature;         // local curvature scale of ln factor, >= 0
};

struct RadialIntegral {
  double log_value = kNegInf;
  double truncation_radius = 0.0;
  double tail_log_bound = kNegInf;
  std::size_t nodes = 0;
};

namespace detail {

inline double panel_width(double curvature, double p, std::size_t deg, double r) {
  const double c = curvature + p * static_cast<double>(deg + 1) / std::pow(std::max(r, 0.05), 2);
  return std::max(1e-5, 0.5 * std::min(1.0, 1.0 / std::sqrt(1.0 + c)));
}

}  // namespace detail

/// ln of int_C |h|^p factor(|z|) dm(z), marching outward in panels until the
/// log integrand has fallen `cutoff` units below its running max. At the radius
/// cap the integral is accepted only if the integrand decays faster than r^{-1}
/// (log-log slope below -1.05); otherwise DivergentIntegral is thrown.
inline RadialIntegral integrate_radial(const EntireFunction& h, const RadialIntegrand& spec, const NormOptions& opt = {}) {
  RadialIntegral out;
  if (h.is_zero()) return out;
  const AngularSampler ang(h);
  const auto L = [&](double r) {
    if (r <= 0) return kNegInf;
    const double a = ang.log_mean_pow(r, spec.p);
    if (a == kNegInf) return kNegInf;
    return a + spec.log_factor(r) + std::log(2 * kPi * r);
  };
  const AdaptiveOptions aopt{opt.rel_tol, 40};
  std::vector<double> rs, ls;
  double r = 0.0, total = kNegInf, max_l = kNegInf, prev_l = kNegInf;
  while (true) {
    const double b = std::min(opt.radius_cap, r + detail::panel_width(spec.curvature(r), spec.p, h.degree(), r));
    total = log_add(total, adaptive_log_integral(L, r, b, total, aopt, out.nodes));
    const double lb = L(b);
    if (std::isnan(lb) || lb == kInf) throw QuadratureFailure("integrand not finite at r = " + std::to_string(b));
    rs.push_back(b);
    ls.push_back(lb);
    max_l = std::max(max_l, lb);
    if (max_l > kNegInf && lb < max_l - opt.cutoff && lb <= prev_l) {
      out.truncation_radius = b;
      const double slope = (lb - prev_l) / (b - r);
      out.tail_log_bound = lb == kNegInf ? kNegInf : lb - std::log(std::max(-slope, 1e-300));
      break;
    }
    if (b >= opt.radius_cap) {
      std::size_t first = 0;
      while (first < rs.size() && rs[first] < opt.radius_cap / 2) ++first;
      if (rs.size() - first < 2) first = rs.size() >= 2 ? rs.size() - 2 : 0;
      const double ds = log_log_slope(rs, ls, first, rs.size());
      if (!(ds < -1.05)) throw DivergentIntegral(opt.radius_cap, ds);
      out.truncation_radius = b;
      out.tail_log_bound = lb + std::log(b) - std::log(-ds - 1);
      break;
    }
    prev_l = lb;
    r = b;
  }
  out.log_value = total;
  return out;
}

struct RadialSup {
  double log_value = kNegInf;
  double radius = 0.0;
  double theta = 0.0;
  bool divergent = false;
  double last_radius = 0.0;
  std::size_t nodes = 0;
};

/// sup over z of ln|h(z)| + log_factor(|z|): radial march with angular maxima,
/// then golden-section refinement in r and theta around the best sample.
inline RadialSup sup_radial(const EntireFunction& h, const std::function<double(double)>& log_factor,
                            const std::function<double(double)>& curvature, const NormOptions& opt = {}) {
  RadialSup out;
  if (h.is_zero()) return out;
  const AngularSampler ang(h);
  auto S = [&](double r, bool refine) {
    const auto m = ang.log_max(r, refine);
    ++out.nodes;
    if (m.log_value == kNegInf) return AngularSampler::Max{};
    return AngularSampler::Max{m.log_value + log_factor(r), m.theta};
  };
  std::vector<double> rs{0.0};
  std::vector<double> vs{S(0.0, false).log_value};
  std::size_t best = 0;
  double r = 0.0;
  while (true) {
    const double b = std::min(opt.radius_cap, r + 0.5 * detail::panel_width(curvature(r), 1.0, h.degree(), r));
    const double v = S(b, false).log_value;
    if (std::isnan(v)) throw QuadratureFailure("supremand not finite at r = " + std::to_string(b));
    rs.push_back(b);
    vs.push_back(v);
    if (v > vs[best]) best = vs.size() - 1;
    const double prev = vs[vs.size() - 2];
    if (vs[best] > kNegInf && v < vs[best] - opt.cutoff && v <= prev) break;
    if (b >= opt.radius_cap) {
      out.divergent = best == vs.size() - 1 && v > prev;
      break;
    }
    r = b;
  }
  out.last_radius = rs.back();
  out.log_value = vs[best];
  out.radius = rs[best];
  out.theta = S(rs[best], true).theta;
  if (vs[best] == kNegInf) return out;
  const double lo = best == 0 ? 0.0 : rs[best - 1];
  const double hi = best + 1 < rs.size() ? rs[best + 1] : rs[best];
  if (hi > lo) {
    const auto g = golden_max([&](double x) { return S(x, true).log_value; }, lo, hi, 1e-9 * std::max(1.0, hi));
    if (g.value > out.log_value + 1e-15 || (g.value >= out.log_value && g.x < out.radius)) {
      out.log_value = g.value;
      out.radius = g.x;
      out.theta = S(g.x, true).theta;
    }
  }
  const auto here = S(out.radius, true);
  if (here.log_value > out.log_value) out.log_value = here.log_value;
  return out;
}

// ---------------------------------------------------------------------------
// Public norms

namespace detail {

inline std::function<double(double)> laplacian_curvature(const Weight& w, double scale) {
  return [&w, scale](double r) {
    const LogValue d = w.laplacian_log(r);
    return d.sign > 0 ? scale * std::exp(std::min(d.log_abs, 700.0)) : 0.0;
  };
}

inline double log_one_plus_psi_prime(const Weight& w, double r) {
  const LogValue pp = w.psi_prime_log(r);
  return pp.sign > 0 ? softplus(pp.log_abs) : (pp.sign == 0 ? 0.0 : std::log1p(pp.value()));
}

inline NormResult to_norm_result(const RadialIntegral& ri, Exponent p, double log_extra = kNegInf) {
  NormResult res;
  res.p = p;
  res.log_value = log_add(ri.log_value, log_extra) / p.value();
  res.truncation_radius = ri.truncation_radius;
  res.tail_log_bound = ri.tail_log_bound;
  res.nodes = ri.nodes;
  return res;
}

}  // namespace detail

/// ||f||_{p,psi} for finite p.
inline NormResult norm_finite_p(const EntireFunction& f, const Weight& w, Exponent p, const NormOptions& opt = {}) {
  if (p.is_infinite()) throw InvalidParameter("norm_finite_p needs a finite exponent");
  if (f.is_zero()) throw InvalidParameter("norm_finite_p needs a nonzero function");
  const double pv = p.value();
  RadialIntegrand spec;
  spec.p = pv;
  spec.log_factor = [&w, pv](double r) { return -pv * w.psi(r); };
  spec.curvature = detail::laplacian_curvature(w, pv);
  return detail::to_norm_result(integrate_radial(f, spec, opt), p);
}

/// sup_z |f(z)| e^{-psi(z)}.
inline NormResult norm_sup(const EntireFunction& f, const Weight& w, const NormOptions& opt = {}) {
  NormResult res;
  res.p = Exponent::infinity();
  if (f.is_zero()) return res;
  const auto s = sup_radial(f, [&w](double r) { return -w.psi(r); }, detail::laplacian_curvature(w, 1.0), opt);
  res.log_value = s.log_value;
  res.truncation_radius = s.last_radius;
  res.divergent = s.divergent;
  res.nodes = s.nodes;
  res.argmax_radius = s.radius;
  res.argmax_theta = s.theta;
  return res;
}

/// Dispatch on the exponent.
inline NormResult norm(const EntireFunction& f, const Weight& w, Exponent p, const NormOptions& opt = {}) {
  return p.is_infinite() ? norm_sup(f, w, opt) : norm_finite_p(f, w, p, opt);
}

/// ( |f(0)|^p + int |f'|^p e^{-p psi} (1 + psi')^{-p} dm )^{1/p}.
inline NormResult littlewood_paley_p(const EntireFunction& f, const Weight& w, Exponent p, const NormOptions& opt = {}) {
  if (p.is_infinite()) throw InvalidParameter("littlewood_paley_p needs a finite exponent");
  const double pv = p.value();
  const EntireFunction d = f.derivative();
  const double log_f0 = f.at_zero() == cplx{} ? kNegInf : pv * std::log(std::abs(f.at_zero()));
  if (d.is_zero()) {
    NormResult res;
    res.p = p;
    res.log_value = log_f0 / pv;
    return res;
  }
  RadialIntegrand spec;
  spec.p = pv;
  spec.log_factor = [&w, pv](double r) { return -pv * (w.psi(r) + detail::log_one_plus_psi_prime(w, r)); };
  spec.curvature = detail::laplacian_curvature(w, pv);
  return detail::to_norm_result(integrate_radial(d, spec, opt), p, log_f0);
}

/// |f(0)| + sup_z |f'(z)| e^{-psi(z)} / (1 + psi'(z)).
inline NormResult littlewood_paley_sup(const EntireFunction& f, const Weight& w, const NormOptions& opt = {}) {
  NormResult res;
  res.p = Exponent::infinity();
  const EntireFunction d = f.derivative();
  const double log_f0 = f.at_zero() == cplx{} ? kNegInf : std::log(std::abs(f.at_zero()));
  if (d.is_zero()) {
    res.log_value = log_f0;
    return res;
  }
  const auto s = sup_radial(
      d, [&w](double r) { return -w.psi(r) - detail::log_one_plus_psi_prime(w, r); },
      detail::laplacian_curvature(w, 1.0), opt);
  res.log_value = log_add(log_f0, s.log_value);
  res.truncation_radius = s.last_radius;
  res.divergent = s.divergent;
  res.nodes = s.nodes;
  res.argmax_radius = s.radius;
  res.argmax_theta = s.theta;
  return res;
}

inline NormResult littlewood_paley(const EntireFunction& f, const Weight& w, Exponent p, const NormOptions& opt = {}) {
  return p.is_infinite() ? littlewood_paley_sup(f, w, opt) : littlewood_paley_p(f, w, p, opt);
}

}  // namespace focklab
