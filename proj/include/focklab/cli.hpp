#pragma once

// Batch experiment driver behind the `focklab` executable: one JSON config (an
// object, or an array of objects for a batch) per invocation, results as JSON,
// profiles and lattices as CSV.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "focklab/covering.hpp"
#include "focklab/criteria.hpp"
#include "focklab/io.hpp"
#include "focklab/local_estimates.hpp"
#include "focklab/norms.hpp"
#include "focklab/verification.hpp"
#include "focklab/weights.hpp"

namespace focklab::cli {

using io::json;

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kConfigError = 2,
  kDivergence = 3,
  kInvariantViolation = 4,
  kNumericalFailure = 5,
};

struct Artifact {
  std::string suffix;  // appended to the entry name, e.g. ".json", ".profile.csv"
  std::string content;
};

struct EntryOutcome {
  json result;
  std::vector<Artifact> files;
  int exit_code = kOk;
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"weight-check",   "norm",      "lp-norm",  "classify-vg",
                                          "verdict-igmg",   "witness-mg", "witness-d", "covering",
                                          "local-checks",   "inclusion-diagnostic",   "verify-all"};
  return s;
}

namespace detail {

// ---------------------------------------------------------------------------
// Config access

class Entry {
 public:
  explicit Entry(const json& j) : j_(j) {
    if (!j_.is_object()) throw ConfigError("each config entry must be a JSON object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) const {
    if (!j_.contains(key)) throw ConfigError("missing required field '" + key + "'");
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? io::to_double(j_.at(key), key) : fallback;
  }
  double number(const std::string& key) const { return io::to_double(at(key), key); }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
    return v.get<int>();
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw ConfigError("'" + key + "' must be true or false");
    return j_.at(key).get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) throw ConfigError("'" + key + "' must be a string");
    return j_.at(key).get<std::string>();
  }
  std::string text(const std::string& key) const {
    if (!at(key).is_string()) throw ConfigError("'" + key + "' must be a string");
    return at(key).get<std::string>();
  }

  Weight weight() const {
    const std::string spec = text("weight");
    if (spec.rfind("power:", 0) == 0 && flag("allow_inadmissible", false)) {
      WeightSource src;
      src.family = WeightFamily::Power;
      const std::string m = spec.substr(6);
      char* end = nullptr;
      src.parameter = std::strtod(m.c_str(), &end);
      if (m.empty() || end != m.c_str() + m.size()) throw ConfigError("bad power exponent in '" + spec + "'");
      src.allow_inadmissible = true;
      return make_weight(src);
    }
    return Weight::parse(spec);
  }

  Exponent exponent(const std::string& key) const { return io::parse_exponent(at(key), key); }
  Exponent exponent(const std::string& key, Exponent fallback) const {
    return has(key) ? io::parse_exponent(j_.at(key), key) : fallback;
  }

  EntireFunction series(const std::string& key) const { return io::parse_series(at(key)); }
  EntireFunction series(const std::string& key, const std::string& fallback) const {
    return has(key) ? io::parse_series(j_.at(key)) : io::parse_series_shorthand(fallback);
  }

  std::pair<int, int> n_range(int lo, int hi) const {
    if (!has("n_range")) return {lo, hi};
    const json& r = j_.at("n_range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      throw ConfigError("'n_range' must be [n_lo, n_hi]");
    return {r[0].get<int>(), r[1].get<int>()};
  }

  NormOptions norm_options() const {
    NormOptions o;
    o.radius_cap = number("radius_cap", o.radius_cap);
    o.cutoff = number("cutoff", o.cutoff);
    o.rel_tol = number("rel_tol", o.rel_tol);
    return o;
  }

  const json& raw() const { return j_; }

 private:
  const json& j_;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string profile_csv(const GrowthProfile& g) {
  std::ostringstream os;
  io::write_profile_csv(os, g);
  return os.str();
}

inline std::string witness_csv(const WitnessSequence& s) {
  std::ostringstream os;
  io::CsvWriter w(os, {"n", "ratio"});
  for (std::size_t k = 0; k < s.n.size(); ++k) w.row({static_cast<double>(s.n[k]), s.ratio[k]});
  return os.str();
}

inline EntryOutcome finish(json result, std::vector<Artifact> extra = {}, int code = kOk) {
  EntryOutcome o;
  o.files.push_back({".json", dump(result)});
  for (auto& a : extra) o.files.push_back(std::move(a));
  o.result = std::move(result);
  o.exit_code = code;
  return o;
}

// ---------------------------------------------------------------------------
// Subcommands

inline EntryOutcome weight_check(const Entry& e) {
  const Weight w = e.weight();
  const double r_max = e.number("r_max", 100.0);
  const int n = e.integer("n_samples", 200);
  if (n < 50 || r_max < 10) throw ConfigError("weight-check needs r_max >= 10 and n_samples >= 50");
  const auto rep = check_admissibility(w, r_max, static_cast<std::size_t>(n));
  json j;
  j["weight"] = w.spec();
  j["report"] = io::to_json(rep);
  json samples = json::array();
  for (double r : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    json s;
    s["r"] = r;
    s["psi"] = io::number(w.psi(r));
    s["laplacian_log"] = io::number(w.laplacian_log(r).log_abs);
    s["tau"] = io::number(w.tau(r));
    samples.push_back(std::move(s));
  }
  j["samples"] = std::move(samples);
  const auto prof = tau_profile(w, r_max, static_cast<std::size_t>(n));
  j["tau_profile"] = to_string(prof.classification);
  return finish(std::move(j), {{".profile.csv", profile_csv(prof)}});
}

inline EntryOutcome norm_like(const Entry& e, bool lp) {
  const Weight w = e.weight();
  const EntireFunction f = e.series("f");
  const Exponent p = e.exponent("p");
  try {
    const NormResult r = lp ? littlewood_paley(f, w, p, e.norm_options()) : norm(f, w, p, e.norm_options());
    json j = io::to_json(r);
    return finish(j, {}, r.divergent ? kDivergence : kOk);
  } catch (const DivergentIntegral& d) {
    json j;
    j["log_value"] = "inf";
    j["p"] = io::exponent_json(p);
    j["divergent"] = true;
    j["radius_cap"] = d.radius_cap();
    j["tail_slope"] = io::number(d.tail_slope());
    j["message"] = d.what();
    return finish(std::move(j), {}, kDivergence);
  }
}

inline EntryOutcome classify_vg(const Entry& e) {
  const Weight w = e.weight();
  const EntireFunction g = e.series("g");
  const Exponent p = e.exponent("p");
  const std::string direction = e.text("direction", "into-sup");
  OperatorVerdict v;
  if (direction == "into-sup") {
    ClassifyOptions o;
    o.r0 = e.number("r0", o.r0);
    o.ratio = e.number("ratio", o.ratio);
    o.radius_cap = e.number("radius_cap", o.radius_cap);
    o.tail_relative = e.number("tail_relative", o.tail_relative);
    o.symbolic_fast_path = e.flag("symbolic", o.symbolic_fast_path);
    v = vg_into_sup_classify(g, w, p, o);
  } else if (direction == "sup-into-p") {
    v = vg_from_sup_into_p(g, w, p, e.norm_options());
  } else {
    throw ConfigError("'direction' must be \"into-sup\" or \"sup-into-p\"");
  }
  std::vector<Artifact> extra;
  if (v.profile) extra.push_back({".profile.csv", profile_csv(*v.profile)});
  return finish(io::to_json(v), std::move(extra), v.bounded == Tri::No ? kDivergence : kOk);
}

inline EntryOutcome verdict_igmg(const Entry& e) {
  const EntireFunction g = e.series("g");
  const Exponent p = e.exponent("p"), q = e.exponent("q", p);
  const std::string op = e.text("operator", "both");
  const SymbolKind kind = symbol_kind(g);
  if (op == "Mg") return finish(io::to_json(ig_mg_verdict(kind, p, q, OperatorKind::Mg)));
  if (op == "Ig") return finish(io::to_json(ig_mg_verdict(kind, p, q, OperatorKind::Ig)));
  if (op != "both") throw ConfigError("'operator' must be \"Mg\", \"Ig\" or \"both\"");
  json j = json::array({io::to_json(ig_mg_verdict(kind, p, q, OperatorKind::Ig)),
                        io::to_json(ig_mg_verdict(kind, p, q, OperatorKind::Mg))});
  return finish(std::move(j));
}

inline EntryOutcome witness_mg(const Entry& e) {
  const auto [lo, hi] = e.n_range(0, 30);
  const auto s = mg_unboundedness_witness(e.series("g"), e.weight(), e.exponent("p"), lo, hi,
                                          e.number("min_growth", 0.05), e.norm_options());
  return finish(io::to_json(s), {{".csv", witness_csv(s)}});
}

inline EntryOutcome witness_d(const Entry& e) {
  const auto [lo, hi] = e.n_range(1, 30);
  const Exponent p = e.exponent("p");
  const auto s = d_unboundedness_witness(e.weight(), p, e.exponent("q", p), lo, hi, e.number("min_growth", 0.05),
                                         e.norm_options());
  return finish(io::to_json(s), {{".csv", witness_csv(s)}});
}

inline EntryOutcome inclusion(const Entry& e) {
  const auto [lo, hi] = e.n_range(1, 30);
  const auto g = inclusion_ratio_diagnostic(e.weight(), e.exponent("p"), e.exponent("q"), lo, hi, e.norm_options());
  return finish(io::to_json(g), {{".profile.csv", profile_csv(g)}});
}

inline EntryOutcome covering(const Entry& e) {
  const double R = e.number("region_radius");
  CoveringOptions opt;
  const std::string method = e.text("method", "ring");
  if (method == "greedy") opt.method = CoveringMethod::Greedy;
  else if (method != "ring") throw ConfigError("'method' must be \"ring\" or \"greedy\"");
  opt.budget = e.number("budget", opt.budget);
  VerifyOptions vo;
  vo.probe_spacing = e.number("probe_spacing", vo.probe_spacing);
  vo.lambda = e.number("probe_lambda", vo.lambda);

  CoveringLattice lat;
  RadiusFunction t;
  json head;
  if (e.has("constant_radius")) {
    t = RadiusFunction::constant(e.number("constant_radius"));
    lat = generate_covering(t, R, opt);
    head["radius_function"] = "constant";
  } else {
    const Weight w = e.weight();
    t = default_radius_function(w, R, opt);
    lat = generate_covering(w, R, opt);
    head["weight"] = w.spec();
    head["radius_function"] = t.mode();
    head["lipschitz_scale"] = io::number(lipschitz_scale(w, R));
  }
  const auto rep = verify_covering(lat, t, vo);
  lat.n_max = rep.n_max;
  json j = head;
  j["lattice"] = io::to_json(lat, false);
  j["report"] = io::to_json(rep);
  std::ostringstream csv;
  io::write_lattice_csv(csv, lat);
  return finish(std::move(j), {{".lattice.csv", csv.str()}, {".lattice.json", dump(io::to_json(lat))}},
                rep.all_ok() ? kOk : kInvariantViolation);
}

inline EntryOutcome local_checks(const Entry& e) {
  const Weight w = e.weight();
  const double p = e.number("p", 2.0);
  LocalParams lp;
  lp.sigma = e.number("sigma", lp.sigma);
  lp.beta = e.number("beta", p);
  const EntireFunction f = e.series("f", "1");
  json j;
  j["weight"] = w.spec();

  json pts = json::array();
  const json default_points = json::array({json::array({0.0, 0.0}), json::array({1.0, 0.0}), json::array({2.0, 1.0})});
  const json& points = e.has("points") ? e.raw().at("points") : default_points;
  if (!points.is_array()) throw ConfigError("'points' must be an array of [x, y]");
  for (const auto& pt : points) {
    if (!pt.is_array() || pt.size() != 2) throw ConfigError("'points' must be an array of [x, y]");
    const cplx z{io::to_double(pt[0], "points"), io::to_double(pt[1], "points")};
    const auto r = subharmonic_mean_ratio_detail(f, w, p, lp, z);
    json s;
    s["z"] = json::array({z.real(), z.imag()});
    s["ratio"] = io::number(r.ratio);
    s["radial_nodes"] = r.disk.radial_nodes;
    s["angular_nodes"] = r.disk.angular_nodes;
    pts.push_back(std::move(s));
  }
  j["subharmonic"] = std::move(pts);

  json tc = json::array();
  for (double sigma : {0.2, 0.1, 0.05}) {
    json c = io::to_json(tau_comparability(w, sigma, static_cast<std::size_t>(e.integer("sample_count", 101))));
    c["sigma"] = sigma;
    tc.push_back(std::move(c));
  }
  j["tau_comparability"] = std::move(tc);

  std::vector<Artifact> extra;
  if (e.has("disk_cases")) {
    const json& cases = e.raw().at("disk_cases");
    if (!cases.is_array()) throw ConfigError("'disk_cases' must be an array of {k, p, q}");
    json out = json::array();
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const Entry c(cases[i]);
      const int k = c.integer("k", 0);
      const double lp_p = c.number("p"), lp_q = c.number("q");
      const auto res = disk_equivalence_check(k, w, lp_p, lp_q, lp.sigma, c.number("radius_cap", 200.0));
      json r = io::to_json(res);
      r["k"] = k;
      r["p"] = lp_p;
      r["q"] = lp_q;
      out.push_back(std::move(r));
      const std::string tag = ".disk" + std::to_string(i);
      extra.push_back({tag + ".side_a.csv", profile_csv(res.side_a)});
      extra.push_back({tag + ".side_b.csv", profile_csv(res.side_b)});
    }
    j["disk_characterization"] = std::move(out);
  }
  return finish(std::move(j), std::move(extra));
}

inline EntryOutcome verify_all(const Entry& e) {
  const bool acceptance = e.flag("acceptance", true);
  const bool invariants = e.flag("invariants", true);
  std::vector<std::function<verification::CheckResult()>> checks;
  if (acceptance)
    for (auto& c : verification::acceptance_checks()) checks.push_back(std::move(c));
  if (invariants)
    for (auto& c : verification::invariant_checks()) checks.push_back(std::move(c));

  std::map<std::string, std::vector<std::string>> manifest;
  for (const auto& op : verification::all_operations()) manifest[op];
  manifest["cli.run"].push_back("verify-all");
  json results = json::array();
  bool ok = true;
  for (const auto& check : checks) {
    const auto r = check();
    ok = ok && r.passed;
    for (const auto& op : r.ops) manifest[op].push_back(r.id);
    json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["passed"] = r.passed;
    c["detail"] = r.detail;
    results.push_back(std::move(c));
  }
  json m = json::object();
  std::vector<std::string> uncovered;
  for (const auto& op : verification::all_operations()) {
    m[op] = manifest[op];
    if (manifest[op].empty()) uncovered.push_back(op);
  }
  const bool full = acceptance && invariants;
  json j;
  j["checks"] = std::move(results);
  j["coverage_manifest"] = std::move(m);
  j["uncovered_operations"] = uncovered;
  j["passed"] = ok && (!full || uncovered.empty());
  return finish(j, {}, j["passed"].get<bool>() ? kOk : kInvariantViolation);
}

inline EntryOutcome dispatch(const std::string& cmd, const Entry& e) {
  if (cmd == "weight-check") return weight_check(e);
  if (cmd == "norm") return norm_like(e, false);
  if (cmd == "lp-norm") return norm_like(e, true);
  if (cmd == "classify-vg") return classify_vg(e);
  if (cmd == "verdict-igmg") return verdict_igmg(e);
  if (cmd == "witness-mg") return witness_mg(e);
  if (cmd == "witness-d") return witness_d(e);
  if (cmd == "covering") return covering(e);
  if (cmd == "local-checks") return local_checks(e);
  if (cmd == "inclusion-diagnostic") return inclusion(e);
  if (cmd == "verify-all") return verify_all(e);
  throw ConfigError("unknown subcommand '" + cmd + "'");
}

inline EntryOutcome error_outcome(const std::string& message, int code) {
  EntryOutcome o;
  o.result = {{"error", message}, {"exit_code", code}};
  o.files.push_back({".json", dump(o.result)});
  o.exit_code = code;
  return o;
}

inline EntryOutcome run_entry(const std::string& cmd, const json& entry) {
  try {
    return dispatch(cmd, Entry(entry));
  } catch (const ConfigError& e) {
    return error_outcome(e.what(), kConfigError);
  } catch (const SyntaxError& e) {
    return error_outcome(e.what(), kConfigError);
  } catch (const UnknownIdentifier& e) {
    return error_outcome(e.what(), kConfigError);
  } catch (const InvalidParameter& e) {
    return error_outcome(e.what(), kConfigError);
  } catch (const NonPositiveValue& e) {
    return error_outcome(e.what(), kConfigError);
  } catch (const RegionTooLarge& e) {
    return error_outcome(e.what(), kConfigError);
  } catch (const DivergentIntegral& e) {
    return error_outcome(e.what(), kDivergence);
  } catch (const QuadratureFailure& e) {
    return error_outcome(e.what(), kNumericalFailure);
  } catch (const NonPositiveLaplacian& e) {
    return error_outcome(e.what(), kNumericalFailure);
  } catch (const nlohmann::json::exception& e) {
    return error_outcome(std::string("config: ") + e.what(), kConfigError);
  } catch (const std::exception& e) {
    return error_outcome(e.what(), kUnexpected);
  }
}

inline std::string entry_name(const std::string& cmd, const json& entry, std::size_t index, bool batch) {
  if (entry.is_object() && entry.contains("name") && entry.at("name").is_string()) {
    const auto n = entry.at("name").get<std::string>();
    if (n.empty() || n.find_first_of("/\\") != std::string::npos || n == "." || n == "..")
      throw ConfigError("'name' must be a plain file name");
    return n;
  }
  return batch ? cmd + "-" + std::to_string(index) : cmd;
}

}  // namespace detail

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
};

/// Runs every entry of `config` (an object, or an array of objects) through `subcommand`.
/// Results go to `out` as JSON; with an output directory each entry also writes
/// <name>.json plus its CSV artifacts. Returns the largest entry exit code.
inline int run(const std::string& subcommand, const json& config, const RunOptions& opt, std::ostream& out) {
  if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end()) {
    out << detail::dump({{"error", "unknown subcommand '" + subcommand + "'"}, {"exit_code", kConfigError}});
    return kConfigError;
  }
  const bool batch = config.is_array();
  const json entries = batch ? config : json::array({config});
  if (batch && entries.empty()) {
    out << detail::dump({{"error", "empty batch"}, {"exit_code", kConfigError}});
    return kConfigError;
  }

  std::vector<std::string> names;
  try {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      names.push_back(detail::entry_name(subcommand, entries[i], i, batch));
      if (!seen.insert(names.back()).second) throw ConfigError("duplicate entry name '" + names.back() + "'");
    }
    if (opt.out_dir) std::filesystem::create_directories(*opt.out_dir);
  } catch (const std::exception& e) {
    out << detail::dump({{"error", e.what()}, {"exit_code", kConfigError}});
    return kConfigError;
  }

  int code = kOk;
  json all = json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto outcome = detail::run_entry(subcommand, entries[i]);
    code = std::max(code, outcome.exit_code);
    if (opt.out_dir) {
      for (const auto& a : outcome.files) {
        std::ofstream f(*opt.out_dir / (names[i] + a.suffix), std::ios::binary);
        f << a.content;
        if (!f) {
          out << detail::dump({{"error", "cannot write to output directory"}, {"exit_code", kConfigError}});
          return kConfigError;
        }
      }
    }
    all.push_back(outcome.result);
  }
  out << detail::dump(batch ? all : all[0]);
  return code;
}

}  // namespace focklab::cli
