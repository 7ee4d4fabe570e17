#pragma once

// Boundedness and compactness criteria for V_g, I_g, M_g and D: growth
// classification of the criterion quantities, degree thresholds for power
// weights, symbolic verdicts, and monomial divergence witnesses.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "focklab/entire.hpp"
#include "focklab/errors.hpp"
#include "focklab/growth_profile.hpp"
#include "focklab/norms.hpp"
#include "focklab/operators.hpp"
#include "focklab/rational.hpp"
#include "focklab/weights.hpp"

namespace focklab {

enum class Tri { Yes, No, Inconclusive };
enum class OperatorKind { Vg, Ig, Mg, D };

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

inline std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Vg: return "Vg";
    case OperatorKind::Ig: return "Ig";
    case OperatorKind::Mg: return "Mg";
    case OperatorKind::D: return "D";
  }
  return "";
}

struct OperatorVerdict {
  OperatorKind op = OperatorKind::Vg;
  Exponent p;
  Exponent q;
  Tri bounded = Tri::Inconclusive;
  Tri compact = Tri::Inconclusive;
  std::string evidence_kind;                 // "profile", "integral" or "symbolic"
  std::string reason;
  std::optional<GrowthProfile> profile;
  std::optional<NormResult> integral;
  std::optional<Growth> numeric_cross_check; // numeric classification when the verdict is symbolic
  std::optional<Tri> symbolic_cross_check;   // symbolic verdict when the verdict is numeric
};

struct ClassifyOptions {
  double r0 = 1.0;
  double ratio = 1.15;
  double radius_cap = 50.0;
  double tail_relative = 1e-6;  // truncated-exp symbols: keep radii with tail / max|g'| below this
  bool symbolic_fast_path = true;
};

namespace detail {

inline OperatorVerdict verdict_from_growth(Growth g, OperatorVerdict v) {
  switch (g) {
    case Growth::Vanishing: v.bounded = Tri::Yes; v.compact = Tri::Yes; break;
    case Growth::Bounded: v.bounded = Tri::Yes; v.compact = Tri::No; break;
    case Growth::Divergent: v.bounded = Tri::No; v.compact = Tri::No; break;
    case Growth::Inconclusive: v.bounded = Tri::Inconclusive; v.compact = Tri::Inconclusive; break;
  }
  return v;
}

inline bool is_polynomial_symbol(const EntireFunction& g) {
  return g.provenance().kind != Provenance::Kind::TruncatedExp;
}

inline std::optional<Rational> power_weight_exponent(const Weight& w) {
  if (w.family() != WeightFamily::Power) return std::nullopt;
  return Rational::from_double(w.parameter());
}

inline std::optional<Rational> rational_exponent(const Exponent& p) {
  if (p.is_infinite()) return std::nullopt;
  return Rational::from_double(p.value());
}

}  // namespace detail

/// beta for p = infinity, else (beta (p - 1) + 2) / p.
inline Rational degree_threshold_power_weight(const Rational& beta, const std::optional<Rational>& p) {
  if (beta <= Rational(2)) throw InvalidParameter("degree threshold needs beta > 2");
  if (!p) return beta;
  if (*p <= Rational(0)) throw InvalidParameter("degree threshold needs p > 0");
  return (beta * (*p - Rational(1)) + Rational(2)) / *p;
}

inline Rational degree_threshold_power_weight(double beta, Exponent p) {
  const auto b = Rational::from_double(beta);
  if (!b) throw InvalidParameter("beta is not a representable rational");
  if (p.is_infinite()) return degree_threshold_power_weight(*b, std::nullopt);
  const auto pr = Rational::from_double(p.value());
  if (!pr) throw InvalidParameter("p is not a representable rational");
  return degree_threshold_power_weight(*b, pr);
}

/// ln of the criterion quantity max_theta |g'| (Lap psi)^{1/p} / (1 + psi') on the circle |z| = r.
inline double vg_sup_quantity_log(const AngularSampler& dg, const Weight& w, Exponent p, double r) {
  const double m = dg.log_max(r).log_value;
  if (m == kNegInf) return kNegInf;
  double v = m - detail::log_one_plus_psi_prime(w, r);
  if (!p.is_infinite()) v += w.laplacian_log(r).log_abs / p.value();
  return v;
}

/// Profile of the criterion quantity on a geometric grid, restricted to tail-valid
/// radii for truncated-exponential symbols.
inline GrowthProfile vg_sup_profile(const EntireFunction& g, const Weight& w, Exponent p, const ClassifyOptions& opt = {}) {
  const EntireFunction dg = g.derivative();
  const AngularSampler samp(dg);
  std::vector<double> radii, vals;
  for (double r : geometric_grid(opt.r0, opt.ratio, opt.radius_cap)) {
    if (dg.provenance().kind == Provenance::Kind::TruncatedExp) {
      const double tail = dg.tail_log_bound(r);
      const double peak = samp.log_max(r).log_value;
      if (!(tail - peak < std::log(opt.tail_relative))) break;
    }
    radii.push_back(r);
    vals.push_back(vg_sup_quantity_log(samp, w, p, r));
  }
  if (radii.size() < 4) throw InvalidParameter("fewer than four tail-valid radii; raise the number of series terms");
  return classify_profile(std::move(radii), std::move(vals));
}

/// Symbolic verdict for a polynomial symbol against a power weight |z|^beta: the
/// quantity behaves like r^e with e = deg g - beta + (beta - 2)/p.
inline std::optional<OperatorVerdict> vg_into_sup_symbolic(const EntireFunction& g, const Weight& w, Exponent p) {
  const auto beta = detail::power_weight_exponent(w);
  if (!beta || !detail::is_polynomial_symbol(g)) return std::nullopt;
  const auto pr = detail::rational_exponent(p);
  if (!p.is_infinite() && !pr) return std::nullopt;
  OperatorVerdict v;
  v.op = OperatorKind::Vg;
  v.p = p;
  v.q = Exponent::infinity();
  v.evidence_kind = "symbolic";
  if (g.degree() == 0) {
    v.reason = "g' = 0";
    return detail::verdict_from_growth(Growth::Vanishing, v);
  }
  Rational e = Rational(static_cast<std::int64_t>(g.degree())) - *beta;
  if (pr) e = e + (*beta - Rational(2)) / *pr;
  v.reason = "criterion quantity ~ r^(" + e.to_string() + ")";
  const Growth gr = e < Rational(0) ? Growth::Vanishing : (e == Rational(0) ? Growth::Bounded : Growth::Divergent);
  return detail::verdict_from_growth(gr, v);
}

/// V_g : F_p -> F_infinity.
inline OperatorVerdict vg_into_sup_classify(const EntireFunction& g, const Weight& w, Exponent p,
                                            const ClassifyOptions& opt = {}) {
  if (g.is_zero()) throw InvalidParameter("vg_into_sup_classify needs a nonzero symbol");
  const auto sym = opt.symbolic_fast_path ? vg_into_sup_symbolic(g, w, p) : std::nullopt;
  GrowthProfile prof;
  if (g.degree() == 0) {
    prof.radii = {opt.r0};
    prof.log_values = {kNegInf};
    prof.classification = Growth::Vanishing;
    prof.tail_slope = kNegInf;
  } else {
    prof = vg_sup_profile(g, w, p, opt);
  }
  OperatorVerdict v;
  if (sym) {
    v = *sym;
    v.numeric_cross_check = prof.classification;
  } else {
    v.op = OperatorKind::Vg;
    v.p = p;
    v.q = Exponent::infinity();
    v.evidence_kind = "profile";
    v.reason = "tail slope " + expr::detail::format_number(prof.tail_slope);
    v = detail::verdict_from_growth(prof.classification, v);
  }
  v.profile = std::move(prof);
  return v;
}

/// V_g : F_infinity -> F_p, p finite: bounded (equivalently compact) iff
/// |g'| / (1 + psi') lies in L^p(C, dm).
inline OperatorVerdict vg_from_sup_into_p(const EntireFunction& g, const Weight& w, Exponent p, const NormOptions& opt = {}) {
  if (p.is_infinite()) throw InvalidParameter("vg_from_sup_into_p needs a finite exponent");
  OperatorVerdict v;
  v.op = OperatorKind::Vg;
  v.p = Exponent::infinity();
  v.q = p;
  v.evidence_kind = "integral";
  const EntireFunction dg = g.derivative();
  if (const auto beta = detail::power_weight_exponent(w); beta && detail::is_polynomial_symbol(g)) {
    if (const auto pr = detail::rational_exponent(p)) {
      // integrand ~ r^{p (deg g - beta)} against r dr
      const bool conv = dg.is_zero() || (*pr) * (Rational(static_cast<std::int64_t>(g.degree())) - *beta) < Rational(-2);
      v.symbolic_cross_check = conv ? Tri::Yes : Tri::No;
    }
  }
  if (dg.is_zero()) {
    v.bounded = v.compact = Tri::Yes;
    v.reason = "g' = 0";
    return v;
  }
  const double pv = p.value();
  RadialIntegrand spec;
  spec.p = pv;
  spec.log_factor = [&w, pv](double r) { return -pv * detail::log_one_plus_psi_prime(w, r); };
  spec.curvature = [](double) { return 0.0; };
  try {
    const auto ri = integrate_radial(dg, spec, opt);
    v.integral = detail::to_norm_result(ri, p);
    v.bounded = v.compact = Tri::Yes;
    v.reason = "integral converges";
  } catch (const DivergentIntegral& e) {
    v.bounded = v.compact = Tri::No;
    v.reason = std::string("integral diverges: ") + e.what();
  }
  return v;
}

enum class SymbolKind { Zero, Constant, Nonconstant };

inline std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Zero: return "zero";
    case SymbolKind::Constant: return "constant";
    case SymbolKind::Nonconstant: return "nonconstant";
  }
  return "";
}

inline SymbolKind symbol_kind(const EntireFunction& g) {
  if (g.is_zero()) return SymbolKind::Zero;
  return g.is_constant() ? SymbolKind::Constant : SymbolKind::Nonconstant;
}

/// I_g and M_g : F_p -> F_q. For p != q only g = 0 gives a bounded operator;
/// for p = q constants are bounded and only g = 0 is compact.
inline OperatorVerdict ig_mg_verdict(SymbolKind g, Exponent p, Exponent q, OperatorKind op = OperatorKind::Mg) {
  if (op != OperatorKind::Ig && op != OperatorKind::Mg) throw InvalidParameter("ig_mg_verdict covers I_g and M_g only");
  OperatorVerdict v;
  v.op = op;
  v.p = p;
  v.q = q;
  v.evidence_kind = "symbolic";
  const bool zero = g == SymbolKind::Zero;
  const bool bounded = p == q ? g != SymbolKind::Nonconstant : zero;
  v.bounded = bounded ? Tri::Yes : Tri::No;
  v.compact = zero ? Tri::Yes : Tri::No;
  v.reason = "symbol " + to_string(g) + (p == q ? ", p = q" : ", p != q");
  return v;
}

// ---------------------------------------------------------------------------
// Monomial witnesses

struct WitnessSequence {
  std::vector<int> n;
  std::vector<double> ratio;
  bool strictly_increasing = false;  // over the whole range
  bool monotone_tail = false;        // strictly increasing over the second half
  double tail_growth = 0.0;          // log-log slope of the ratio against n over the second half
  bool unbounded_corroborated = false;
};

namespace detail {

inline WitnessSequence finish_witness(WitnessSequence s, double min_growth) {
  const std::size_t m = s.ratio.size();
  s.strictly_increasing = m >= 2;
  for (std::size_t i = 1; i < m; ++i) s.strictly_increasing = s.strictly_increasing && s.ratio[i] > s.ratio[i - 1];
  const std::size_t half = m / 2;
  s.monotone_tail = m - half >= 2;
  for (std::size_t i = half + 1; i < m; ++i) s.monotone_tail = s.monotone_tail && s.ratio[i] > s.ratio[i - 1];
  if (m - half >= 2) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < m; ++i) {
      x.push_back(static_cast<double>(s.n[i]));
      y.push_back(std::log(s.ratio[i]));
    }
    s.tail_growth = log_log_slope(x, y, half, m);
  }
  s.unbounded_corroborated = s.monotone_tail && s.tail_growth >= min_growth;
  return s;
}

inline void check_range(int n_lo, int n_hi, int min_lo) {
  if (n_lo < min_lo || n_hi < n_lo) throw InvalidParameter("invalid n range");
}

}  // namespace detail

/// ||g z^n|| / ||z^n|| for n in [n_lo, n_hi].
inline WitnessSequence mg_unboundedness_witness(const EntireFunction& g, const Weight& w, Exponent p, int n_lo, int n_hi,
                                                double min_growth = 0.05, const NormOptions& opt = {}) {
  detail::check_range(n_lo, n_hi, 0);
  if (g.is_zero()) throw InvalidParameter("witness needs a nonzero symbol");
  WitnessSequence s;
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto zn = EntireFunction::monomial(static_cast<std::size_t>(n));
    const double num = norm(multiply(g, zn), w, p, opt).log_value;
    const double den = norm(zn, w, p, opt).log_value;
    s.n.push_back(n);
    s.ratio.push_back(std::exp(num - den));
  }
  return detail::finish_witness(std::move(s), min_growth);
}

/// ||D z^n||_q / ||z^n||_p for n in [n_lo, n_hi], n_lo >= 1.
inline WitnessSequence d_unboundedness_witness(const Weight& w, Exponent p, Exponent q, int n_lo, int n_hi,
                                               double min_growth = 0.05, const NormOptions& opt = {}) {
  detail::check_range(n_lo, n_hi, 1);
  WitnessSequence s;
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto zn = EntireFunction::monomial(static_cast<std::size_t>(n));
    const double num = norm(differentiate_op(zn), w, q, opt).log_value;
    const double den = norm(zn, w, p, opt).log_value;
    s.n.push_back(n);
    s.ratio.push_back(std::exp(num - den));
  }
  return detail::finish_witness(std::move(s), min_growth);
}

/// Profile over n of ln(||z^n||_q / ||z^n||_p), p and q finite; exploratory only.
inline GrowthProfile inclusion_ratio_diagnostic(const Weight& w, Exponent p, Exponent q, int n_lo, int n_hi,
                                                const NormOptions& opt = {}) {
  detail::check_range(n_lo, n_hi, 1);
  if (p.is_infinite() || q.is_infinite()) throw InvalidParameter("inclusion diagnostic needs finite exponents");
  std::vector<double> ns, vals;
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto zn = EntireFunction::monomial(static_cast<std::size_t>(n));
    ns.push_back(static_cast<double>(n));
    vals.push_back(p == q ? 0.0 : norm_finite_p(zn, w, q, opt).log_value - norm_finite_p(zn, w, p, opt).log_value);
  }
  return classify_profile(std::move(ns), std::move(vals));
}

}  // namespace focklab
