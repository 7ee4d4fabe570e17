#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/log_value.hpp"

namespace focklab {

enum class Growth { Vanishing, Bounded, Divergent, Inconclusive };

inline std::string to_string(Growth g) {
  switch (g) {
    case Growth::Vanishing: return "Vanishing";
    case Growth::Bounded: return "Bounded";
    case Growth::Divergent: return "Divergent";
    case Growth::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

/// Thresholds of the sampled stand-in for "sup < inf" and "lim = 0".
struct ProfileRule {
  double dead_band = 0.05;           // |tail slope| below this is flat
  double tail_fraction = 0.25;       // share of samples used for the slope fit
  double vanishing_drop = 2.0;       // last value must sit this far below the first
  double decade_oscillation = 1.0;   // max spread over the last decade for Bounded
};

/// Sampled log-quantity along increasing radii together with its verdict.
struct GrowthProfile {
  std::vector<double> radii;
  std::vector<double> log_values;
  Growth classification = Growth::Inconclusive;
  double tail_slope = 0.0;
};

/// r_k = r0 * ratio^k for all r_k <= cap (and always the first point).
inline std::vector<double> geometric_grid(double r0, double ratio, double cap) {
  if (r0 <= 0 || ratio <= 1) throw InvalidParameter("geometric grid needs r0 > 0 and ratio > 1");
  std::vector<double> out;
  for (double r = r0; r <= cap * (1 + 1e-12) || out.empty(); r *= ratio) out.push_back(r);
  return out;
}

/// n points from a to b, geometrically spaced.
inline std::vector<double> geometric_points(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = a * std::pow(b / a, t);
  }
  if (n > 1) out.back() = b;
  return out;
}

/// Least-squares slope of y against ln x over the finite samples in [first, last).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t first,
                            std::size_t last) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = first; i < last; ++i) {
    if (!std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]);
    sx += lx;
    sy += y[i];
    sxx += lx * lx;
    sxy += lx * y[i];
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double nn = static_cast<double>(n);
  const double den = nn * sxx - sx * sx;
  if (den <= 0) return std::numeric_limits<double>::quiet_NaN();
  return (nn * sxy - sx * sy) / den;
}

/// Classification of a radial log-profile: a pure function of the samples.
inline GrowthProfile classify_profile(std::vector<double> radii, std::vector<double> log_values,
                                      const ProfileRule& rule = {}) {
  GrowthProfile prof;
  prof.radii = std::move(radii);
  prof.log_values = std::move(log_values);
  const auto& r = prof.radii;
  const auto& v = prof.log_values;
  const std::size_t n = r.size();
  if (n == 0 || v.size() != n) throw InvalidParameter("profile needs matching, nonempty radii and values");

  if (std::any_of(v.begin(), v.end(), [](double x) { return x == kInf; })) {
    prof.classification = Growth::Divergent;
    prof.tail_slope = kInf;
    return prof;
  }
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == kNegInf; })) {
    prof.classification = Growth::Vanishing;
    prof.tail_slope = kNegInf;
    return prof;
  }

  const std::size_t tail = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(rule.tail_fraction * n)));
  const std::size_t first_tail = n > tail ? n - tail : 0;
  const double slope = log_log_slope(r, v, first_tail, n);
  prof.tail_slope = slope;
  if (std::isnan(slope)) {
    prof.classification = Growth::Inconclusive;
    return prof;
  }

  double first = kNegInf, last = kNegInf;
  for (double x : v)
    if (std::isfinite(x)) {
      first = x;
      break;
    }
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    if (std::isfinite(*it)) {
      last = *it;
      break;
    }
  double lo = kInf, hi = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] < r.back() / 10 || !std::isfinite(v[i])) continue;
    lo = std::min(lo, v[i]);
    hi = std::max(hi, v[i]);
  }

  if (slope > rule.dead_band) {
    prof.classification = Growth::Divergent;
  } else if (slope < -rule.dead_band && last < first - rule.vanishing_drop) {
    prof.classification = Growth::Vanishing;
  } else if (std::abs(slope) <= rule.dead_band && hi - lo < rule.decade_oscillation) {
    prof.classification = Growth::Bounded;
  } else {
    prof.classification = Growth::Inconclusive;
  }
  return prof;
}

}  // namespace focklab
