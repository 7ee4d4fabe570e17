#pragma once

// Radial weights psi, their derivatives, the radial Laplacian and the radius
// function tau = (1 + Laplacian)^(-1/2), all available in log form so that
// super-exponential weights can be evaluated far from the origin.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/growth_profile.hpp"
#include "focklab/log_value.hpp"
#include "focklab/weight_expr.hpp"

namespace focklab {

enum class WeightFamily { Power, ExpLinear, SuperExp, ClassicalGaussian, Expression };

struct WeightSource {
  WeightFamily family = WeightFamily::ClassicalGaussian;
  double parameter = 0.0;       // m for Power, alpha for the exponential families
  std::string expression;       // Expression only
  bool allow_inadmissible = false;
};

class Weight {
 public:
  static Weight power(double m, bool allow_inadmissible = false) {
    if (!(m > 0)) throw InvalidParameter("power weight needs m > 0");
    if (m <= 2 && !allow_inadmissible)
      throw InvalidParameter("power weight needs m > 2 (pass allow_inadmissible for m <= 2)");
    Weight w;
    w.family_ = WeightFamily::Power;
    w.param_ = m;
    return w;
  }
  static Weight exp_linear(double alpha) {
    if (!(alpha > 0)) throw InvalidParameter("exponential weight needs alpha > 0");
    Weight w;
    w.family_ = WeightFamily::ExpLinear;
    w.param_ = alpha;
    return w;
  }
  static Weight super_exp(double alpha) {
    if (!(alpha > 0)) throw InvalidParameter("super-exponential weight needs alpha > 0");
    Weight w;
    w.family_ = WeightFamily::SuperExp;
    w.param_ = alpha;
    return w;
  }
  static Weight gaussian() {
    Weight w;
    w.family_ = WeightFamily::ClassicalGaussian;
    w.param_ = 0.5;
    return w;
  }
  static Weight expression(std::string_view text) {
    Weight w;
    w.family_ = WeightFamily::Expression;
    w.text_ = std::string(text);
    w.psi_ = expr::parse(text);
    w.d1_ = expr::differentiate(w.psi_);
    w.d2_ = expr::differentiate(w.d1_);
    return w;
  }

  /// "power:m", "exp:alpha", "superexp:alpha", "gaussian" or "expr:<text>".
  static Weight parse(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    auto number = [&]() {
      const std::string t(tail);
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (t.empty() || end != t.c_str() + t.size()) throw InvalidParameter("bad weight parameter in '" + std::string(spec) + "'");
      return v;
    };
    if (head == "gaussian" && tail.empty()) return gaussian();
    if (head == "power") return power(number());
    if (head == "exp") return exp_linear(number());
    if (head == "superexp") return super_exp(number());
    if (head == "expr") return expression(tail);
    throw InvalidParameter("unknown weight '" + std::string(spec) + "'");
  }

  WeightFamily family() const { return family_; }
  double parameter() const { return param_; }
  const expr::WeightExprAst& expression_ast() const { return psi_; }

  std::string spec() const {
    auto num = [](double v) { return expr::detail::format_number(v); };
    switch (family_) {
      case WeightFamily::Power: return "power:" + num(param_);
      case WeightFamily::ExpLinear: return "exp:" + num(param_);
      case WeightFamily::SuperExp: return "superexp:" + num(param_);
      case WeightFamily::ClassicalGaussian: return "gaussian";
      case WeightFamily::Expression: return "expr:" + text_;
    }
    return {};
  }

  // --- psi and derivatives ------------------------------------------------

  LogValue psi_log(double r) const {
    switch (family_) {
      case WeightFamily::Power: return r == 0 ? LogValue{} : LogValue::from_log(param_ * std::log(r));
      case WeightFamily::ExpLinear: return LogValue::from_log(param_ * r);
      case WeightFamily::SuperExp: return LogValue::from_log(std::exp(param_ * r));
      case WeightFamily::ClassicalGaussian: return LogValue::from_double(0.5 * r * r);
      case WeightFamily::Expression: return expr::eval_signed_log(psi_, r);
    }
    return {};
  }

  LogValue psi_prime_log(double r) const {
    const double a = param_;
    switch (family_) {
      case WeightFamily::Power:
        if (r == 0) return a > 1 ? LogValue{} : (a == 1 ? LogValue::from_double(1.0) : LogValue{1, kInf});
        return LogValue::from_log(std::log(a) + (a - 1) * std::log(r));
      case WeightFamily::ExpLinear: return LogValue::from_log(std::log(a) + a * r);
      case WeightFamily::SuperExp: return LogValue::from_log(std::log(a) + a * r + std::exp(a * r));
      case WeightFamily::ClassicalGaussian: return LogValue::from_double(r);
      case WeightFamily::Expression: return expr::eval_signed_log(d1_, r);
    }
    return {};
  }

  LogValue psi_second_log(double r) const {
    const double a = param_;
    switch (family_) {
      case WeightFamily::Power: {
        if (a == 1) return {};
        const LogValue coeff = LogValue::from_double(a * (a - 1));
        if (r == 0) return a > 2 ? LogValue{} : (a == 2 ? coeff : LogValue{coeff.sign, kInf});
        return coeff * LogValue::from_log((a - 2) * std::log(r));
      }
      case WeightFamily::ExpLinear: return LogValue::from_log(2 * std::log(a) + a * r);
      case WeightFamily::SuperExp:
        return LogValue::from_log(2 * std::log(a) + a * r + softplus(a * r) + std::exp(a * r));
      case WeightFamily::ClassicalGaussian: return LogValue::from_double(1.0);
      case WeightFamily::Expression: return expr::eval_signed_log(d2_, r);
    }
    return {};
  }

  double psi(double r) const { return psi_log(r).value(); }
  double psi_prime(double r) const { return psi_prime_log(r).value(); }
  double psi_second(double r) const { return psi_second_log(r).value(); }

  // --- Laplacian and tau ---------------------------------------------------

  /// psi'' + psi'/r for r > 0; 2 psi''(0) at the origin.
  LogValue laplacian_log(double r) const {
    if (r == 0) return LogValue::from_double(2.0) * psi_second_log(0.0);
    if (family_ == WeightFamily::Power) return LogValue::from_log(2 * std::log(param_) + (param_ - 2) * std::log(r));
    return psi_second_log(r) + psi_prime_log(r) / LogValue::from_double(r);
  }
  double laplacian(double r) const { return laplacian_log(r).value(); }

  /// False where the Laplacian is not strictly positive (inadmissible weight);
  /// the origin is exempt because smooth radial weights may vanish to second order there.
  bool laplacian_positive(double r) const {
    const LogValue d = laplacian_log(r);
    return r == 0 ? d.sign >= 0 : d.sign > 0;
  }

  double log_tau(double r) const {
    const LogValue d = laplacian_log(r);
    if (d.sign < 0 || (d.sign == 0 && r > 0) || std::isnan(d.log_abs)) throw NonPositiveLaplacian(r);
    return d.sign == 0 ? 0.0 : -0.5 * softplus(d.log_abs);
  }
  double tau(double r) const { return std::exp(log_tau(r)); }

  /// d/dr ln tau by central differences (one-sided near the origin).
  double dlog_tau(double r) const {
    const double h = 1e-5 * std::max(1.0, r);
    if (r < h) return (log_tau(r + h) - log_tau(r)) / h;
    return (log_tau(r + h) - log_tau(r - h)) / (2 * h);
  }
  LogValue tau_prime_log(double r) const { return LogValue::from_log(log_tau(r)) * LogValue::from_double(dlog_tau(r)); }
  double tau_prime(double r) const { return tau_prime_log(r).value(); }

 private:
  Weight() = default;

  WeightFamily family_ = WeightFamily::ClassicalGaussian;
  double param_ = 0.0;
  std::string text_;
  expr::WeightExprAst psi_, d1_, d2_;
};

inline Weight make_weight(const WeightSource& src) {
  switch (src.family) {
    case WeightFamily::Power: return Weight::power(src.parameter, src.allow_inadmissible);
    case WeightFamily::ExpLinear: return Weight::exp_linear(src.parameter);
    case WeightFamily::SuperExp: return Weight::super_exp(src.parameter);
    case WeightFamily::ClassicalGaussian: return Weight::gaussian();
    case WeightFamily::Expression: return Weight::expression(src.expression);
  }
  throw InvalidParameter("unknown weight family");
}

/// ln tau sampled on n geometric radii in [1, r_max], classified like any other profile.
inline GrowthProfile tau_profile(const Weight& w, double r_max, std::size_t n) {
  if (n < 2 || r_max <= 1) throw InvalidParameter("tau_profile needs r_max > 1 and n >= 2");
  auto radii = geometric_points(1.0, r_max, n);
  std::vector<double> vals;
  vals.reserve(n);
  for (double r : radii) vals.push_back(w.log_tau(r));
  return classify_profile(std::move(radii), std::move(vals));
}

// ---------------------------------------------------------------------------
// Admissibility audit

enum class ExtraCondition { TauRCIncreasing, TauPrimeLogVanishes, Neither };

inline std::string to_string(ExtraCondition c) {
  switch (c) {
    case ExtraCondition::TauRCIncreasing: return "TauRCIncreasing";
    case ExtraCondition::TauPrimeLogVanishes: return "TauPrimeLogVanishes";
    case ExtraCondition::Neither: return "Neither";
  }
  return "Neither";
}

struct AdmissibilityReport {
  bool laplacian_positive = false;
  bool tau_vanishes = false;
  bool tau_prime_vanishes = false;
  ExtraCondition extra_condition = ExtraCondition::Neither;
  double extra_constant = 0.0;          // the C of TauRCIncreasing
  bool faster_than_gaussian = false;
  bool derivatives_consistent = false;  // symbolic psi', psi'' agree with finite differences
  double large_r0 = kInf;               // psi' >= 100 for every sampled r >= large_r0
  bool verdict = false;

  std::vector<double> radii;
  std::vector<double> log_tau;
  std::vector<double> log_abs_tau_prime;
  std::vector<double> log_psi_prime_over_r;
};

namespace detail {

// Strictly decreasing over [first, end) with a log-log slope at most -dead_band.
// A profile that is identically -inf (the quantity is exactly zero) counts as vanishing.
inline bool decays(const std::vector<double>& r, const std::vector<double>& v, std::size_t first, double dead_band) {
  bool all_zero = true;
  for (std::size_t i = first; i < v.size(); ++i) all_zero = all_zero && v[i] == kNegInf;
  if (all_zero) return true;
  for (std::size_t i = first + 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return log_log_slope(r, v, first, v.size()) <= -dead_band;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace detail

/// Checks every admissibility condition on a geometric grid in [1, r_max]; the
/// limit conditions are judged on the last decade of the grid.
inline AdmissibilityReport check_admissibility(const Weight& w, double r_max = 100.0, std::size_t n_samples = 200) {
  if (r_max < 10) throw InvalidParameter("check_admissibility needs r_max >= 10");
  if (n_samples < 50) throw InvalidParameter("check_admissibility needs n_samples >= 50");
  constexpr double kDeadBand = 0.05;

  AdmissibilityReport rep;
  rep.radii = geometric_points(1.0, r_max, n_samples);
  const auto& r = rep.radii;
  std::size_t first = 0;
  while (r[first] < r_max / 10) ++first;

  rep.laplacian_positive = true;
  for (double x : r) rep.laplacian_positive = rep.laplacian_positive && w.laplacian_positive(x);
  if (!rep.laplacian_positive) return rep;

  std::vector<double> log_psi_p;
  for (double x : r) {
    rep.log_tau.push_back(w.log_tau(x));
    const LogValue tp = w.tau_prime_log(x);
    rep.log_abs_tau_prime.push_back(tp.sign == 0 ? kNegInf : tp.log_abs);
    const LogValue pp = w.psi_prime_log(x);
    log_psi_p.push_back(pp.sign > 0 ? pp.log_abs : kNegInf);
    rep.log_psi_prime_over_r.push_back(pp.sign > 0 ? pp.log_abs - std::log(x) : kNegInf);
  }

  rep.tau_vanishes = detail::decays(r, rep.log_tau, first, kDeadBand) &&
                     !std::all_of(rep.log_tau.begin() + static_cast<std::ptrdiff_t>(first), rep.log_tau.end(),
                                  [](double v) { return v == kNegInf; });
  rep.tau_prime_vanishes = detail::decays(r, rep.log_abs_tau_prime, first, kDeadBand);

  for (double c : {1.0, 2.0, 4.0, 8.0}) {
    bool inc = true;
    for (std::size_t i = first + 1; i < r.size() && inc; ++i)
      inc = rep.log_tau[i] + c * std::log(r[i]) > rep.log_tau[i - 1] + c * std::log(r[i - 1]);
    if (inc) {
      rep.extra_condition = ExtraCondition::TauRCIncreasing;
      rep.extra_constant = c;
      break;
    }
  }
  if (rep.extra_condition == ExtraCondition::Neither) {
    std::vector<double> q(r.size(), kNegInf);
    bool ok = true;
    for (std::size_t i = first; i < r.size(); ++i) {
      if (!(rep.log_tau[i] < 0)) ok = false;
      else q[i] = rep.log_abs_tau_prime[i] + std::log(-rep.log_tau[i]);
    }
    if (ok && detail::decays(r, q, first, kDeadBand)) rep.extra_condition = ExtraCondition::TauPrimeLogVanishes;
  }

  bool inc = true;
  for (std::size_t i = first + 1; i < r.size() && inc; ++i)
    inc = rep.log_psi_prime_over_r[i] > rep.log_psi_prime_over_r[i - 1];
  rep.faster_than_gaussian = inc && log_log_slope(r, rep.log_psi_prime_over_r, first, r.size()) >= kDeadBand;

  // d/dr ln psi = psi'/psi and d/dr ln psi' = psi''/psi', wherever both sides are finite.
  rep.derivatives_consistent = true;
  for (double x : r) {
    const LogValue p0 = w.psi_log(x), p1 = w.psi_prime_log(x), p2 = w.psi_second_log(x);
    if (p0.sign <= 0 || p1.sign <= 0) continue;
    // Past ~1e6 the log magnitudes no longer carry 1e-5 relative information about their ratio.
    if (std::abs(p0.log_abs) > 1e6 || std::abs(p1.log_abs) > 1e6 || std::abs(p2.log_abs) > 1e6) continue;
    const double h = 1e-5 * x;
    const LogValue a = w.psi_log(x + h), b = w.psi_log(x - h);
    const LogValue c = w.psi_prime_log(x + h), d = w.psi_prime_log(x - h);
    if (a.sign <= 0 || b.sign <= 0 || c.sign <= 0 || d.sign <= 0) continue;
    const double fd1 = (a.log_abs - b.log_abs) / (2 * h);
    const double fd2 = (c.log_abs - d.log_abs) / (2 * h);
    const double sym1 = std::exp(p1.log_abs - p0.log_abs);
    const double sym2 = (p2 / p1).value();
    if (!std::isfinite(fd1) || !std::isfinite(fd2) || !std::isfinite(sym1) || !std::isfinite(sym2)) continue;
    if (!detail::rel_close(fd1, sym1, 1e-5) || !detail::rel_close(fd2, sym2, 1e-5)) rep.derivatives_consistent = false;
  }

  const double log100 = std::log(100.0);
  for (std::size_t i = r.size(); i-- > 0;) {
    if (!(log_psi_p[i] >= log100)) break;
    rep.large_r0 = r[i];
  }

  rep.verdict = rep.laplacian_positive && rep.tau_vanishes && rep.tau_prime_vanishes &&
                rep.extra_condition != ExtraCondition::Neither && rep.faster_than_gaussian &&
                rep.derivatives_consistent;
  return rep;
}

}  // namespace focklab
