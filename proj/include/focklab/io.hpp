#pragma once

// JSON and CSV serialization, series input (coefficient arrays and a small
// polynomial shorthand) and exponent parsing for configs.

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "focklab/covering.hpp"
#include "focklab/criteria.hpp"
#include "focklab/entire.hpp"
#include "focklab/errors.hpp"
#include "focklab/growth_profile.hpp"
#include "focklab/local_estimates.hpp"
#include "focklab/norms.hpp"
#include "focklab/weight_expr.hpp"
#include "focklab/weights.hpp"

namespace focklab::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars

/// Finite doubles as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
inline json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double to_double(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return kNegInf;
  }
  throw ConfigError(what + ": expected a number");
}

inline json exponent_json(const Exponent& p) { return p.is_infinite() ? json("inf") : json(p.value()); }

inline Exponent parse_exponent(const json& j, const std::string& what = "exponent") {
  try {
    if (j.is_number()) return Exponent::finite(j.get<double>());
    if (j.is_string()) return Exponent::parse(j.get<std::string>());
  } catch (const InvalidParameter& e) {
    throw ConfigError(what + ": " + e.what());
  }
  throw ConfigError(what + ": expected a positive number or \"inf\"");
}

// ---------------------------------------------------------------------------
// Series

inline json series_json(const EntireFunction& f) {
  json a = json::array();
  for (const auto& c : f.coefficients()) a.push_back(json::array({c.real(), c.imag()}));
  return a;
}

inline EntireFunction series_from_json_array(const json& j) {
  std::vector<cplx> c;
  c.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& e = j[k];
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ConfigError("series entry " + std::to_string(k) + ": expected [re, im]");
    }
  }
  if (c.empty()) throw ConfigError("series: empty coefficient array");
  return EntireFunction(std::move(c));
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  EntireFunction parse() {
    std::map<std::size_t, double> terms;
    skip();
    if (at_end()) fail("a term");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++i_;
        skip();
      } else if (!first) {
        fail("'+' or '-'");
      }
      const auto [c, k] = term();
      terms[k] += sign * c;
      first = false;
      skip();
    }
    std::size_t deg = terms.rbegin()->first;
    std::vector<cplx> v(deg + 1);
    for (const auto& [k, c] : terms) v[k] = c;
    return EntireFunction(std::move(v));
  }

 private:
  std::pair<double, std::size_t> term() {
    double c = 1.0;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      c = number();
      have_coef = true;
      skip();
      if (peek() == '*') {
        ++i_;
        skip();
        if (peek() != 'z') fail("'z'");
      }
    }
    if (peek() != 'z') {
      if (!have_coef) fail("a number or 'z'");
      return {c, 0};
    }
    ++i_;
    skip();
    std::size_t k = 1;
    if (peek() == '^') {
      ++i_;
      skip();
      const std::size_t start = i_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
      if (start == i_) fail("a nonnegative integer exponent");
      k = std::stoul(std::string(s_.substr(start, i_ - start)));
    }
    return {c, k};
  }

  double number() {
    const std::string rest(s_.substr(i_));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("a number");
    }
    i_ += used;
    return v;
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(i_, expected); }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Polynomial shorthand such as "z^5", "3", "2*z^3 - z + 1", or "exp:lambda[:terms]"
/// for the first `terms` Taylor coefficients of e^{lambda z}.
inline EntireFunction parse_series_shorthand(std::string_view s) {
  if (s.rfind("exp:", 0) == 0) {
    const std::string rest(s.substr(4));
    const auto colon = rest.find(':');
    try {
      const double lambda = std::stod(rest.substr(0, colon));
      const std::size_t terms = colon == std::string::npos ? kDefaultSeriesTerms : std::stoul(rest.substr(colon + 1));
      return EntireFunction::truncated_exp(lambda, terms);
    } catch (const std::logic_error&) {
      throw ConfigError("malformed truncated exponential '" + std::string(s) + "'");
    }
  }
  return detail::PolyParser(s).parse();
}

inline EntireFunction parse_series(const json& j) {
  if (j.is_string()) return parse_series_shorthand(j.get<std::string>());
  if (j.is_number()) return EntireFunction::constant(j.get<double>());
  if (j.is_array()) return series_from_json_array(j);
  throw ConfigError("series: expected a coefficient array or shorthand string");
}

// ---------------------------------------------------------------------------
// Results

inline json to_json(const NormResult& r) {
  json j;
  j["log_value"] = number(r.log_value);
  j["p"] = exponent_json(r.p);
  j["truncation_radius"] = number(r.truncation_radius);
  j["tail_log_bound"] = number(r.tail_log_bound);
  j["nodes"] = r.nodes;
  if (r.p.is_infinite()) {
    j["argmax_radius"] = number(r.argmax_radius);
    j["argmax_theta"] = number(r.argmax_theta);
    j["divergent"] = r.divergent;
  }
  return j;
}

inline json to_json(const GrowthProfile& g) {
  json j;
  j["classification"] = to_string(g.classification);
  j["tail_slope"] = number(g.tail_slope);
  json pts = json::array();
  for (std::size_t k = 0; k < g.radii.size(); ++k) pts.push_back(json::array({g.radii[k], number(g.log_values[k])}));
  j["samples"] = std::move(pts);
  return j;
}

inline json tri_json(Tri t) {
  switch (t) {
    case Tri::Yes: return true;
    case Tri::No: return false;
    case Tri::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

inline json to_json(const OperatorVerdict& v) {
  json j;
  j["operator"] = to_string(v.op);
  j["p"] = exponent_json(v.p);
  j["q"] = exponent_json(v.q);
  j["bounded"] = tri_json(v.bounded);
  j["compact"] = tri_json(v.compact);
  j["evidence_kind"] = v.evidence_kind;
  if (v.profile) j["profile"] = to_json(*v.profile);
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.integral) j["integral"] = to_json(*v.integral);
  if (v.numeric_cross_check) j["numeric_cross_check"] = to_string(*v.numeric_cross_check);
  if (v.symbolic_cross_check) j["symbolic_cross_check"] = tri_json(*v.symbolic_cross_check);
  return j;
}

inline json to_json(const WitnessSequence& s) {
  json j;
  j["n"] = s.n;
  json r = json::array();
  for (double x : s.ratio) r.push_back(number(x));
  j["ratio"] = std::move(r);
  j["strictly_increasing"] = s.strictly_increasing;
  j["monotone_tail"] = s.monotone_tail;
  j["tail_growth"] = number(s.tail_growth);
  j["unbounded_corroborated"] = s.unbounded_corroborated;
  return j;
}

inline json to_json(const AdmissibilityReport& a) {
  json j;
  j["laplacian_positive"] = a.laplacian_positive;
  j["tau_vanishes"] = a.tau_vanishes;
  j["tau_prime_vanishes"] = a.tau_prime_vanishes;
  j["extra_condition"] = to_string(a.extra_condition);
  j["extra_constant"] = number(a.extra_constant);
  j["faster_than_gaussian"] = a.faster_than_gaussian;
  j["derivatives_consistent"] = a.derivatives_consistent;
  j["large_r0"] = number(a.large_r0);
  j["verdict"] = a.verdict;
  return j;
}

inline json to_json(const CoveringReport& r) {
  json j;
  j["separation_ok"] = r.separation_ok;
  j["separation_violations"] = r.separation_violations;
  j["coverage_ok"] = r.coverage_ok;
  j["coverage_failures"] = r.coverage_failures;
  j["interior_probes"] = r.interior_probes;
  j["edge_failures"] = r.edge_failures;
  j["property_iii_ok"] = r.property_iii_ok;
  j["property_iii_failures"] = r.property_iii_failures;
  j["property_iii_samples"] = r.property_iii_samples;
  j["n_max"] = r.n_max;
  j["multiplicity_probes"] = r.multiplicity_probes;
  j["min_radius"] = number(r.min_radius);
  j["max_radius"] = number(r.max_radius);
  j["all_ok"] = r.all_ok();
  return j;
}

inline json to_json(const CoveringLattice& lat, bool with_centers = true) {
  json j;
  j["method"] = lat.method;
  j["region_radius"] = lat.region_radius;
  j["count"] = lat.centers.size();
  j["n_max"] = lat.n_max;
  j["scale"] = number(lat.scale);
  if (with_centers) {
    json c = json::array();
    for (std::size_t k = 0; k < lat.centers.size(); ++k)
      c.push_back(json::array({lat.centers[k].real(), lat.centers[k].imag(), lat.radii[k]}));
    j["centers"] = std::move(c);
  }
  return j;
}

inline json to_json(const TauComparability& t) { return {{"max_ratio", number(t.max_ratio)}, {"min_ratio", number(t.min_ratio)}}; }

inline json to_json(const DiskEquivalence& l) {
  return {{"side_a", to_json(l.side_a)}, {"side_b", to_json(l.side_b)}, {"agree", l.agree}};
}

// ---------------------------------------------------------------------------
// CSV

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// enclosed in double quotes with embedded quotes doubled.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return expr::detail::format_number(x);
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) { row(header); }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) os_ << ',';
      os_ << csv_field(fields[k]);
    }
    os_ << "\r\n";
  }
  void row(std::initializer_list<double> xs) {
    std::vector<std::string> f;
    for (double x : xs) f.push_back(csv_number(x));
    row(f);
  }

 private:
  std::ostream& os_;
};

inline void write_profile_csv(std::ostream& os, const GrowthProfile& g) {
  CsvWriter w(os, {"r", "log_value"});
  for (std::size_t k = 0; k < g.radii.size(); ++k) w.row({g.radii[k], g.log_values[k]});
}

inline void write_lattice_csv(std::ostream& os, const CoveringLattice& lat) {
  CsvWriter w(os, {"x", "y", "t"});
  for (std::size_t k = 0; k < lat.centers.size(); ++k) w.row({lat.centers[k].real(), lat.centers[k].imag(), lat.radii[k]});
}

/// Splits one CSV record per line, honoring RFC 4180 quoting (no embedded newlines).
inline std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          fields.back() += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.emplace_back();
      } else {
        fields.back() += c;
      }
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace focklab::io
