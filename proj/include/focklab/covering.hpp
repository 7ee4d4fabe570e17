#pragma once

// Separated coverings of the disk |z| <= R by disks D(z_j, t(z_j)) for a radial,
// 1/4-Lipschitz radius function t comparable to tau, with verification of
// separation, coverage, the tripled-disk containment and overlap multiplicity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/hdr_complex.hpp"
#include "focklab/log_value.hpp"
#include "focklab/weights.hpp"

namespace focklab {

/// Radial radius function t(r).
class RadiusFunction {
 public:
  static RadiusFunction constant(double c) {
    if (!(c > 0)) throw InvalidParameter("constant radius must be positive");
    RadiusFunction t;
    t.mode_ = "constant";
    t.const_ = c;
    t.lipschitz_ = 0.0;
    return t;
  }

  /// t = s * tau.
  static RadiusFunction scaled(const Weight& w, double s, double lipschitz_bound) {
    if (!(s > 0)) throw InvalidParameter("scale must be positive");
    RadiusFunction t;
    t.mode_ = "scaled";
    t.weight_ = std::make_shared<Weight>(w);
    t.const_ = s;
    t.lipschitz_ = s * lipschitz_bound;
    return t;
  }

  /// Largest kappa-Lipschitz function below tau on a grid of [0, r_max], linearly interpolated.
  static RadiusFunction envelope(const Weight& w, double r_max, double kappa, std::size_t n = 200001) {
    if (!(kappa > 0) || !(r_max > 0) || n < 2) throw InvalidParameter("bad envelope parameters");
    RadiusFunction t;
    t.mode_ = "envelope";
    t.weight_ = std::make_shared<Weight>(w);
    t.lipschitz_ = kappa;
    t.h_ = r_max / static_cast<double>(n - 1);
    t.table_.resize(n);
    for (std::size_t k = 0; k < n; ++k) t.table_[k] = w.tau(static_cast<double>(k) * t.h_);
    const double step = kappa * t.h_;
    for (std::size_t k = 1; k < n; ++k) t.table_[k] = std::min(t.table_[k], t.table_[k - 1] + step);
    for (std::size_t k = n - 1; k-- > 0;) t.table_[k] = std::min(t.table_[k], t.table_[k + 1] + step);
    return t;
  }

  double operator()(double r) const {
    if (mode_ == "constant") return const_;
    if (mode_ == "scaled") return const_ * weight_->tau(r);
    const double x = r / h_;
    if (x >= static_cast<double>(table_.size() - 1)) return table_.back();
    const auto k = static_cast<std::size_t>(x);
    const double f = x - static_cast<double>(k);
    return table_[k] + f * (table_[k + 1] - table_[k]);
  }
  double operator()(cplx z) const { return (*this)(std::abs(z)); }

  const std::string& mode() const { return mode_; }
  double lipschitz_bound() const { return lipschitz_; }
  /// min over [0, r_max] of t / tau (the scale s of t = s tau); 1 for constant t.
  double min_ratio_to_tau(double r_max, std::size_t n = 2001) const {
    if (!weight_) return 1.0;
    double m = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = r_max * static_cast<double>(k) / static_cast<double>(n - 1);
      m = std::min(m, (*this)(r) / weight_->tau(r));
    }
    return m;
  }

 private:
  std::string mode_;
  double const_ = 1.0;
  double lipschitz_ = 0.0;
  std::shared_ptr<Weight> weight_;
  double h_ = 1.0;
  std::vector<double> table_;
};

struct CoveringLattice {
  std::vector<cplx> centers;
  std::vector<double> radii;
  double region_radius = 0.0;
  int n_max = 0;            // filled in from verify_covering
  double scale = 1.0;       // min t / tau over the region
  std::string method;       // "ring" or "greedy"
};

enum class CoveringMethod { Ring, Greedy };

struct CoveringOptions {
  CoveringMethod method = CoveringMethod::Ring;
  double budget = 1e7;                  // max centers (ring) or candidates (greedy)
  double kappa = 1.0 / (4.0 * 1.1);     // Lipschitz constant of the envelope radius function
  double separation_margin = 1e-6;      // relative slack in every separation inequality
};

/// L = max |tau'| on a dense radial grid of [0, region_radius]; s = min(1, 1 / (4 L (1 + 0.1))).
inline double lipschitz_scale(const Weight& w, double region_radius, std::size_t n = 20001) {
  double L = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = region_radius * static_cast<double>(k) / static_cast<double>(n - 1);
    L = std::max(L, std::abs(w.tau_prime(r)));
  }
  return L == 0.0 ? 1.0 : std::min(1.0, 1.0 / (4.0 * L * 1.1));
}

inline double max_abs_tau_prime(const Weight& w, double region_radius, std::size_t n = 20001) {
  double L = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    L = std::max(L, std::abs(w.tau_prime(region_radius * static_cast<double>(k) / static_cast<double>(n - 1))));
  return L;
}

/// Estimated number of disks: the integral of dA / t^2 over |z| <= R.
inline double estimated_disk_count(const RadiusFunction& t, double R, std::size_t n = 4000) {
  double acc = 0.0;
  const double h = R / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = (static_cast<double>(k) + 0.5) * h;
    const double tr = t(r);
    acc += 2 * kPi * r * h / (tr * tr);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Polar spatial index over a fixed center set

class PolarIndex {
 public:
  PolarIndex(const std::vector<cplx>& centers, const std::vector<double>& radii, const RadiusFunction& t, double r_hi)
      : centers_(centers), radii_(radii) {
    // radial bands about one local radius wide
    edges_.push_back(0.0);
    while (edges_.back() < r_hi) edges_.push_back(edges_.back() + std::max(1e-6, t(edges_.back())));
    edges_.back() = std::max(edges_.back(), r_hi);
    const std::size_t nb = edges_.size() - 1;
    sectors_.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const double width = edges_[b + 1] - edges_[b];
      sectors_[b] = std::max<std::size_t>(1, static_cast<std::size_t>(2 * kPi * edges_[b + 1] / width));
    }
    offsets_.assign(nb + 1, 0);
    for (std::size_t b = 0; b < nb; ++b) offsets_[b + 1] = offsets_[b] + sectors_[b];
    std::vector<std::size_t> count(offsets_.back() + 1, 0);
    cell_of_.resize(centers.size());
    band_tmax_.assign(nb, 0.0);
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const std::size_t b = band_of(std::abs(centers[j]));
      cell_of_[j] = offsets_[b] + sector_of(b, centers[j]);
      ++count[cell_of_[j] + 1];
      band_tmax_[b] = std::max(band_tmax_[b], radii[j]);
    }
    for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
    start_ = count;
    items_.resize(centers.size());
    for (std::size_t j = 0; j < centers.size(); ++j) items_[count[cell_of_[j]]++] = static_cast<std::uint32_t>(j);
    prefix_max_.resize(nb);
    suffix_max_.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) prefix_max_[b] = std::max(b ? prefix_max_[b - 1] : 0.0, band_tmax_[b]);
    for (std::size_t b = nb; b-- > 0;) suffix_max_[b] = std::max(b + 1 < nb ? suffix_max_[b + 1] : 0.0, band_tmax_[b]);
    for (int f = 0; f < 2; ++f) {
      const double factor = f == 0 ? 1.0 : 3.0;
      reach_in_[f].resize(nb);
      reach_out_[f].resize(nb);
      for (std::size_t b = 0; b < nb; ++b)
        reach_in_[f][b] = std::max(b ? reach_in_[f][b - 1] : kNegInf, edges_[b + 1] + factor * band_tmax_[b]);
      for (std::size_t b = nb; b-- > 0;)
        reach_out_[f][b] = std::min(b + 1 < nb ? reach_out_[f][b + 1] : kInf, edges_[b] - factor * band_tmax_[b]);
    }
  }

  /// Calls visit(j) for every center j that may lie within max(factor * t_j, extra) of p
  /// (a superset); stops early when visit returns false.
  template <class Visit>
  void for_candidates(cplx p, double factor, const Visit& visit, double extra = 0.0) const {
    const double rp = std::abs(p);
    const double ap = rp > 0 ? angle(p) : 0.0;
    const std::size_t nb = edges_.size() - 1;
    const std::size_t b0 = band_of(rp);
    // reach_out[b]: smallest inner reach of bands >= b; reach_in[b]: largest outer reach of bands <= b
    const int f = factor == 1.0 ? 0 : (factor == 3.0 ? 1 : -1);
    for (std::size_t b = b0; b < nb; ++b) {
      const bool beyond = f >= 0 ? reach_out_[f][b] >= rp : edges_[b] - rp >= factor * suffix_max_[b];
      if (beyond && edges_[b] - rp >= extra) break;
      if (!scan_band(b, ap, rp, std::max(factor * band_tmax_[b], extra), visit)) return;
    }
    for (std::size_t b = b0; b-- > 0;) {
      const bool beyond = f >= 0 ? reach_in_[f][b] <= rp : rp - edges_[b + 1] >= factor * prefix_max_[b];
      if (beyond && rp - edges_[b + 1] >= extra) break;
      if (!scan_band(b, ap, rp, std::max(factor * band_tmax_[b], extra), visit)) return;
    }
  }

 private:
  std::size_t band_of(double r) const {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
    const std::size_t b = it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin()) - 1;
    return std::min(b, edges_.size() - 2);
  }
  static double angle(cplx z) {
    double a = std::arg(z);
    if (a < 0) a += 2 * kPi;
    return a;
  }
  std::size_t sector_of(std::size_t b, cplx z) const {
    const auto s = static_cast<std::size_t>(angle(z) / (2 * kPi) * static_cast<double>(sectors_[b]));
    return std::min(s, sectors_[b] - 1);
  }

  template <class Visit>
  bool scan_band(std::size_t b, double a, double rp, double rho, const Visit& visit) const {
    if (rho <= 0 || start_[offsets_[b]] == start_[offsets_[b + 1]]) return true;
    const std::size_t ns = sectors_[b];
    const double r_in = edges_[b];
    std::size_t first = 0, count = ns;
    if (rp > 0 && r_in > 0 && ns > 1) {
      // a center at radius >= r_in within rho of p differs in angle by at most 2 asin(s) <= pi s
      const double s = rho / (2 * std::sqrt(rp * r_in));
      if (s < 1) {
        const double half = kPi * s;
        const double per = 2 * kPi / static_cast<double>(ns);
        const auto lo = static_cast<std::int64_t>(std::floor((a - half) / per));
        const auto hi = static_cast<std::int64_t>(std::floor((a + half) / per));
        if (hi - lo + 1 < static_cast<std::int64_t>(ns)) {
          first = static_cast<std::size_t>(((lo % static_cast<std::int64_t>(ns)) + static_cast<std::int64_t>(ns)) %
                                           static_cast<std::int64_t>(ns));
          count = static_cast<std::size_t>(hi - lo + 1);
        }
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t cell = offsets_[b] + (first + i) % ns;
      for (std::size_t k = start_[cell]; k < start_[cell + 1]; ++k)
        if (!visit(items_[k])) return false;
    }
    return true;
  }

  const std::vector<cplx>& centers_;
  const std::vector<double>& radii_;
  std::vector<double> edges_;
  std::vector<std::size_t> sectors_, offsets_, start_, cell_of_;
  std::vector<std::uint32_t> items_;
  std::vector<double> band_tmax_, prefix_max_, suffix_max_;
  std::vector<double> reach_in_[2], reach_out_[2];
};

// ---------------------------------------------------------------------------
// Generation

namespace detail {

// Radial interval of points covered for every angle by a ring of n equally
// spaced disks of radius t centred on |z| = rho.
inline std::pair<double, double> ring_band(double rho, std::size_t n, double t) {
  if (rho == 0) return {0.0, t};
  const double a = kPi / static_cast<double>(n);
  const double s = rho * std::sin(a);
  if (s >= t) return {kInf, kNegInf};
  const double h = std::sqrt(t * t - s * s);
  return {rho * std::cos(a) - h, rho * std::cos(a) + h};
}

// Most centers a ring of radius rho can hold with chord >= d.
inline std::size_t ring_count(double rho, double d) {
  if (2 * rho < d) return 1;
  const double x = d / (2 * rho);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(kPi / std::asin(x))));
}

inline CoveringLattice ring_lattice(const RadiusFunction& t, double R, const CoveringOptions& opt) {
  CoveringLattice lat;
  lat.method = "ring";
  lat.region_radius = R;
  const double eps = opt.separation_margin;
  lat.centers.push_back(0.0);
  lat.radii.push_back(t(0.0));
  double rho = 0.0, t_prev = t(0.0), hi = t(0.0);
  std::size_t ring = 0;
  while (hi < R) {
    // push the next ring as far out as coverage allows, never closer than the separation gap
    double best_rho = -1;
    std::size_t best_n = 0;
    for (double x = 1.8; x >= 1.0; x -= 0.01) {
      const double cand = rho + x * t_prev * (1 + eps);
      const double tc = t(cand);
      if (cand - rho < std::max(t_prev, tc) * (1 + eps)) continue;
      const std::size_t n = ring_count(cand, tc * (1 + eps));
      if (n < 3) continue;
      const auto band = ring_band(cand, n, tc);
      if (band.first <= hi * (1 - 1e-9) && band.second > hi) {
        best_rho = cand;
        best_n = n;
        break;
      }
    }
    if (best_rho < 0) throw InvalidParameter("ring construction failed at r = " + std::to_string(rho));
    ++ring;
    const double tc = t(best_rho);
    const double offset = (ring % 2 == 1) ? kPi / static_cast<double>(best_n) : 0.0;
    for (std::size_t k = 0; k < best_n; ++k) {
      lat.centers.push_back(std::polar(best_rho, offset + 2 * kPi * static_cast<double>(k) / static_cast<double>(best_n)));
      lat.radii.push_back(tc);
    }
    if (static_cast<double>(lat.centers.size()) > opt.budget)
      throw RegionTooLarge(estimated_disk_count(t, R), opt.budget);
    hi = ring_band(best_rho, best_n, tc).second;
    rho = best_rho;
    t_prev = tc;
  }
  return lat;
}

inline double sort_angle(cplx z) {
  double a = std::arg(z);
  if (a < 0) a += 2 * kPi;
  return a;
}

// Square grid of spacing h inside |z| <= R, ordered by (|z|, arg z).
inline std::vector<cplx> ordered_grid(double R, double h) {
  std::vector<cplx> pts;
  const auto m = static_cast<std::int64_t>(std::floor(R / h));
  for (std::int64_t i = -m; i <= m; ++i)
    for (std::int64_t j = -m; j <= m; ++j) {
      const cplx z(static_cast<double>(i) * h, static_cast<double>(j) * h);
      if (std::abs(z) <= R) pts.push_back(z);
    }
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    const double ra = std::abs(a), rb = std::abs(b);
    if (ra != rb) return ra < rb;
    return sort_angle(a) < sort_angle(b);
  });
  return pts;
}

inline CoveringLattice greedy_lattice(const RadiusFunction& t, double R, const CoveringOptions& opt) {
  double t_min = kInf, t_max = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double v = t(R * k / 2000.0);
    t_min = std::min(t_min, v);
    t_max = std::max(t_max, v);
  }
  const double h1 = t_min / 8, h2 = t_min / 10;
  const double est = kPi * R * R / (h2 * h2);
  if (est > opt.budget) throw RegionTooLarge(est, opt.budget);

  CoveringLattice lat;
  lat.method = "greedy";
  lat.region_radius = R;
  // bucket grid with cells of size t_max
  const double cell = t_max;
  const auto m = static_cast<std::int64_t>(std::ceil((R + 2 * t_max) / cell));
  const auto side = static_cast<std::size_t>(2 * m + 1);
  std::vector<std::vector<std::uint32_t>> buckets(side * side);
  auto key = [&](cplx z, std::int64_t di, std::int64_t dj) -> std::int64_t {
    const auto i = static_cast<std::int64_t>(std::floor(z.real() / cell)) + m + di;
    const auto j = static_cast<std::int64_t>(std::floor(z.imag() / cell)) + m + dj;
    if (i < 0 || j < 0 || i >= static_cast<std::int64_t>(side) || j >= static_cast<std::int64_t>(side)) return -1;
    return i * static_cast<std::int64_t>(side) + j;
  };
  const double eps = opt.separation_margin;
  auto accept = [&](cplx c) {
    const double tc = t(c);
    for (std::int64_t di = -1; di <= 1; ++di)
      for (std::int64_t dj = -1; dj <= 1; ++dj) {
        const auto k = key(c, di, dj);
        if (k < 0) continue;
        for (auto j : buckets[static_cast<std::size_t>(k)])
          if (std::abs(c - lat.centers[j]) < std::max(tc, lat.radii[j]) * (1 + eps)) return false;
      }
    return true;
  };
  for (double h : {h1, h2}) {
    for (const cplx c : ordered_grid(R, h)) {
      if (!accept(c)) continue;
      const auto k = key(c, 0, 0);
      buckets[static_cast<std::size_t>(k)].push_back(static_cast<std::uint32_t>(lat.centers.size()));
      lat.centers.push_back(c);
      lat.radii.push_back(t(c));
    }
  }
  return lat;
}

}  // namespace detail

/// Covering of |z| <= R for the given radius function.
inline CoveringLattice generate_covering(const RadiusFunction& t, double region_radius, const CoveringOptions& opt = {}) {
  if (!(region_radius > 0)) throw InvalidParameter("region radius must be positive");
  if (region_radius < t(0.0)) {
    CoveringLattice lat;
    lat.centers = {0.0};
    lat.radii = {t(0.0)};
    lat.region_radius = region_radius;
    lat.n_max = 1;
    lat.method = opt.method == CoveringMethod::Ring ? "ring" : "greedy";
    return lat;
  }
  if (opt.method == CoveringMethod::Ring) {
    const double est = estimated_disk_count(t, region_radius);
    if (est > opt.budget) throw RegionTooLarge(est, opt.budget);
    return detail::ring_lattice(t, region_radius, opt);
  }
  return detail::greedy_lattice(t, region_radius, opt);
}

/// Default radius function for a weight: the kappa-Lipschitz envelope of tau.
inline RadiusFunction default_radius_function(const Weight& w, double region_radius, const CoveringOptions& opt = {}) {
  return RadiusFunction::envelope(w, region_radius + 2.0, opt.kappa);
}

inline CoveringLattice generate_covering(const Weight& w, double region_radius, const CoveringOptions& opt = {}) {
  if (region_radius < 1) throw InvalidParameter("generate_covering needs region_radius >= 1");
  const RadiusFunction t = default_radius_function(w, region_radius, opt);
  CoveringLattice lat = generate_covering(t, region_radius, opt);
  lat.scale = t.min_ratio_to_tau(region_radius);
  return lat;
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyOptions {
  double probe_spacing = 0.0;     // > 0: square probe grid of this spacing; 0: locally adaptive probes
  double lambda = 0.1;            // adaptive probe spacing as a fraction of the local t
  double multiplicity_lambda = 0.5;
  std::size_t boundary_samples = 24;
};

struct CoveringReport {
  bool separation_ok = false;
  std::size_t separation_violations = 0;
  bool coverage_ok = false;
  std::size_t coverage_failures = 0;     // interior probes only
  std::size_t interior_probes = 0;
  std::size_t edge_failures = 0;         // probes within max t of the boundary
  bool property_iii_ok = false;
  std::size_t property_iii_failures = 0;
  std::size_t property_iii_samples = 0;
  int n_max = 0;
  std::size_t multiplicity_probes = 0;
  double min_radius = 0.0;
  double max_radius = 0.0;
  bool all_ok() const { return separation_ok && coverage_ok && property_iii_ok && n_max > 0; }
};

namespace detail {

// Visits probe points of |z| <= R: a square grid, or polar rings whose radial and
// arc spacing is lambda times the local t.
template <class Visit>
void for_probes(const RadiusFunction& t, double R, double spacing, double lambda, const Visit& visit) {
  if (spacing > 0) {
    const auto m = static_cast<std::int64_t>(std::floor(R / spacing));
    for (std::int64_t i = -m; i <= m; ++i)
      for (std::int64_t j = -m; j <= m; ++j) {
        const cplx z(static_cast<double>(i) * spacing, static_cast<double>(j) * spacing);
        if (std::abs(z) <= R) visit(z);
      }
    return;
  }
  visit(cplx{});
  double r = 0.0;
  std::size_t ring = 0;
  while (true) {
    r += lambda * t(r);
    if (r > R) break;
    const double ds = lambda * t(r);
    const auto n = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(2 * kPi * r / ds)));
    const double off = static_cast<double>(ring++ % 2) * kPi / static_cast<double>(n);
    const cplx step = std::polar(1.0, 2 * kPi / static_cast<double>(n));
    cplx z = std::polar(r, off);
    for (std::size_t k = 0; k < n; ++k) {
      // re-anchor periodically so rotation error stays at rounding level
      if (k % 64 == 0) z = std::polar(r, off + 2 * kPi * static_cast<double>(k) / static_cast<double>(n));
      visit(z);
      z *= step;
    }
  }
}

}  // namespace detail

inline CoveringReport verify_covering(const CoveringLattice& lat, const RadiusFunction& t, const VerifyOptions& opt = {}) {
  CoveringReport rep;
  const auto& c = lat.centers;
  const auto& rad = lat.radii;
  if (c.empty() || c.size() != rad.size()) throw InvalidParameter("lattice needs matching, nonempty centers and radii");
  const double R = lat.region_radius;
  rep.min_radius = *std::min_element(rad.begin(), rad.end());
  rep.max_radius = *std::max_element(rad.begin(), rad.end());
  double reach = 0.0;
  for (const auto& z : c) reach = std::max(reach, std::abs(z));
  const PolarIndex index(c, rad, t, std::max(R, reach) + rep.max_radius);

  // (i) separation, exact: every pair closer than max(t_j, t_k)
  for (std::size_t j = 0; j < c.size(); ++j) {
    index.for_candidates(c[j], 1.0, [&](std::uint32_t k) {
      if (k > j && std::abs(c[j] - c[k]) < std::max(rad[j], rad[k])) ++rep.separation_violations;
      return true;
    }, rad[j]);
  }
  rep.separation_ok = rep.separation_violations == 0;

  // (ii) coverage on probes
  double probe_t_max = 0.0;
  for (int k = 0; k <= 2000; ++k) probe_t_max = std::max(probe_t_max, t(R * k / 2000.0));
  const double interior = R - std::max(probe_t_max, rep.max_radius);
  const double spacing = opt.probe_spacing;
  if (spacing > 0 && spacing > rep.min_radius / 10 * (1 + 1e-12))
    throw InvalidParameter("probe spacing must be at most min t / 10");
  detail::for_probes(t, R, spacing, opt.lambda, [&](cplx p) {
    bool covered = false;
    index.for_candidates(p, 1.0, [&](std::uint32_t k) {
      if (std::norm(p - c[k]) < rad[k] * rad[k]) covered = true;
      return !covered;
    });
    const bool inner = std::abs(p) <= interior;
    if (inner) ++rep.interior_probes;
    if (!covered) ++(inner ? rep.coverage_failures : rep.edge_failures);
  });
  rep.coverage_ok = rep.coverage_failures == 0;

  // (iii) for sampled z in D(z_j, t_j): D(z, t(z)) inside D(z_j, 3 t_j)
  const std::size_t m = opt.boundary_samples;
  for (std::size_t j = 0; j < c.size(); ++j) {
    auto check = [&](cplx z) {
      ++rep.property_iii_samples;
      if (std::abs(z - c[j]) + t(z) > 3 * rad[j]) ++rep.property_iii_failures;
    };
    check(c[j]);
    for (std::size_t k = 0; k < m; ++k) {
      const double a = 2 * kPi * static_cast<double>(k) / static_cast<double>(m);
      check(c[j] + std::polar(0.5 * rad[j], a));
      check(c[j] + std::polar(rad[j] * (1 - 1e-12), a));
    }
  }
  rep.property_iii_ok = rep.property_iii_failures == 0;

  // (iv) multiplicity of the tripled disks
  int n_max = 0;
  detail::for_probes(t, R, spacing > 0 ? spacing : 0.0, opt.multiplicity_lambda, [&](cplx p) {
    int count = 0;
    index.for_candidates(p, 3.0, [&](std::uint32_t k) {
      if (std::norm(p - c[k]) < 9 * rad[k] * rad[k]) ++count;
      return true;
    });
    ++rep.multiplicity_probes;
    n_max = std::max(n_max, count);
  });
  rep.n_max = n_max;
  return rep;
}

}  // namespace focklab
