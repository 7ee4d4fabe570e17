#pragma once

// Local estimates on disks D(z, sigma tau(z)): the subharmonic mean-value
// ratio, comparability of tau across such disks, and the two-sided disk
// characterization of |h| against powers of tau.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "focklab/entire.hpp"
#include "focklab/errors.hpp"
#include "focklab/growth_profile.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/weights.hpp"

namespace focklab {

struct LocalParams {
  double sigma = 0.1;
  double beta = 2.0;
};

struct DiskIntegral {
  double log_value = kNegInf;
  std::size_t radial_nodes = 0;
  std::size_t angular_nodes = 0;
  bool converged = false;
};

/// ln of int_{D(center, rho)} exp(L(z)) dm(z): Gauss-Legendre in the polar radius
/// about the center times the trapezoid rule in angle, doubling both node counts
/// until the value changes by less than rel_tol.
template <class LogF>
DiskIntegral log_disk_integral(const LogF& L, cplx center, double rho, double rel_tol = 1e-8,
                               std::size_t max_nodes = 1024) {
  if (!(rho > 0)) throw InvalidParameter("disk radius must be positive");
  DiskIntegral out;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t nr = 8, na = 16; nr <= max_nodes; nr *= 2, na *= 2) {
    const GaussRule& g = gauss_legendre(nr);
    std::vector<double> terms;
    terms.reserve(nr * na);
    for (std::size_t i = 0; i < nr; ++i) {
      const double s = 0.5 * rho * (g.nodes[i] + 1);
      const double lw = std::log(0.5 * rho * g.weights[i] * s * 2 * kPi / static_cast<double>(na));
      for (std::size_t j = 0; j < na; ++j) {
        const double v = L(center + std::polar(s, 2 * kPi * static_cast<double>(j) / static_cast<double>(na)));
        if (v != kNegInf) terms.push_back(v + lw);
      }
    }
    const double cur = terms.empty() ? kNegInf : log_sum_exp(terms);
    out = {cur, nr, na, false};
    if (cur == kNegInf && prev == kNegInf) {
      out.converged = true;
      return out;
    }
    if (std::isfinite(prev) && std::abs(std::expm1(cur - prev)) < rel_tol) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

struct SubharmonicRatio {
  double ratio = 0.0;
  double log_numerator = kNegInf;
  double log_denominator = kNegInf;
  DiskIntegral disk;
};

/// [|f(z)|^p e^{-beta psi(z)}] / [(sigma tau(z))^{-2} int_{D(z, sigma tau(z))} |f|^p e^{-beta psi} dm].
inline SubharmonicRatio subharmonic_mean_ratio_detail(const EntireFunction& f, const Weight& w, double p,
                                                      const LocalParams& lp, cplx z) {
  if (f.is_zero()) throw InvalidParameter("subharmonic ratio needs a nonzero function");
  if (!(lp.sigma > 0)) throw InvalidParameter("sigma must be positive");
  if (!(p > 0) || !std::isfinite(p)) throw InvalidParameter("p must be finite and positive");
  const double log_tau = w.log_tau(std::abs(z));
  const double rho = lp.sigma * std::exp(log_tau);
  if (!(rho > 0)) throw InvalidParameter("sigma * tau(z) underflows");
  auto L = [&](cplx u) {
    const double a = evaluate(f, u).log_abs();
    if (a == kNegInf) return kNegInf;
    return p * a - lp.beta * w.psi(std::abs(u));
  };
  SubharmonicRatio out;
  out.log_numerator = L(z);
  out.disk = log_disk_integral(L, z, rho);
  if (!out.disk.converged) throw QuadratureFailure("disk quadrature did not converge");
  out.log_denominator = out.disk.log_value - 2 * (std::log(lp.sigma) + log_tau);
  out.ratio = out.log_numerator == kNegInf ? 0.0 : std::exp(out.log_numerator - out.log_denominator);
  return out;
}

inline double subharmonic_mean_ratio(const EntireFunction& f, const Weight& w, double p, const LocalParams& lp, cplx z) {
  return subharmonic_mean_ratio_detail(f, w, p, lp, z).ratio;
}

/// Largest r in [0, r_cap] (on a fine grid) with sigma * beta * psi'(r) * tau(r) <= limit:
/// beyond it the integrand varies by more than e^limit across the disk.
inline double subharmonic_sample_radius(const Weight& w, const LocalParams& lp, double r_cap = 10.0, double limit = 30.0) {
  double last = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double r = r_cap * k / 2000.0;
    const LogValue pp = w.psi_prime_log(r);
    const double lv = pp.sign > 0 ? pp.log_abs + w.log_tau(r) + std::log(lp.sigma * std::max(lp.beta, 1e-300)) : kNegInf;
    if (lv > std::log(limit)) break;
    last = r;
  }
  return last;
}

struct TauComparability {
  double max_ratio = 1.0;
  double min_ratio = 1.0;
};

/// Extremes of tau(z) / tau(w) for w on an even grid of [0, r_max] and z on the circle
/// |z - w| = sigma tau(w). When psi'(0) > 0 the Laplacian blows up as r -> 0+ and tau
/// jumps at the origin, so w = 0 is left out of the grid.
inline TauComparability tau_comparability(const Weight& w, double sigma, std::size_t sample_count, double r_max = 10.0,
                                          std::size_t angles = 32) {
  if (!(sigma > 0) || sigma > 0.5) throw InvalidParameter("sigma must lie in (0, 0.5]");
  if (sample_count < 2) throw InvalidParameter("need at least two samples");
  TauComparability out;
  const bool corner = w.psi_prime_log(0.0).sign > 0;
  for (std::size_t i = corner ? 1 : 0; i < sample_count; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(sample_count - 1);
    const double lt = w.log_tau(r);
    const double rho = sigma * std::exp(lt);
    for (std::size_t j = 0; j < angles; ++j) {
      const cplx zz = cplx(r, 0.0) + std::polar(rho, 2 * kPi * static_cast<double>(j) / static_cast<double>(angles));
      const double ratio = std::exp(w.log_tau(std::abs(zz)) - lt);
      out.max_ratio = std::max(out.max_ratio, ratio);
      out.min_ratio = std::min(out.min_ratio, ratio);
    }
  }
  return out;
}

struct DiskEquivalence {
  GrowthProfile side_a;  // (1/q) ln(|h|^q tau^{2 - 2q/p})
  GrowthProfile side_b;  // (1/q) ln(tau^{-2q/p} int_{D(w, sigma tau(w))} |h|^q dm)
  bool agree = false;
};

/// Both sides of the disk characterization for h = z^k on a geometric radius grid.
inline DiskEquivalence disk_equivalence_check(int k, const Weight& w, double p, double q, double sigma,
                                               double radius_cap = 200.0) {
  if (k < 0) throw InvalidParameter("k must be nonnegative");
  if (!(p > 0) || !(q > 0) || !std::isfinite(p) || !std::isfinite(q)) throw InvalidParameter("p and q must be finite and positive");
  if (!(sigma > 0)) throw InvalidParameter("sigma must be positive");
  const auto radii = geometric_grid(1.0, 1.15, radius_cap);
  std::vector<double> a, b;
  for (double r : radii) {
    const double lt = w.log_tau(r);
    a.push_back((q * k * std::log(r) + (2 - 2 * q / p) * lt) / q);
    auto L = [&](cplx u) {
      const double m = std::abs(u);
      return k == 0 ? 0.0 : (m == 0 ? kNegInf : q * k * std::log(m));
    };
    const auto disk = log_disk_integral(L, cplx(r, 0.0), sigma * std::exp(lt));
    if (!disk.converged) throw QuadratureFailure("disk quadrature did not converge");
    b.push_back((disk.log_value - 2 * q / p * lt) / q);
  }
  DiskEquivalence out;
  out.side_a = classify_profile(radii, std::move(a));
  out.side_b = classify_profile(radii, std::move(b));
  out.agree = out.side_a.classification == out.side_b.classification;
  return out;
}

}  // namespace focklab
