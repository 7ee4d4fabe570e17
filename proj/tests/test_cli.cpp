#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "focklab/cli.hpp"

namespace {

using namespace focklab;
using focklab::io::json;
namespace fs = std::filesystem;

struct Run {
  int code;
  json out;
};

Run run(const std::string& cmd, const json& config, std::optional<fs::path> dir = std::nullopt) {
  std::ostringstream os;
  const int code = cli::run(cmd, config, {dir}, os);
  return {code, json::parse(os.str())};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) : path_(fs::temp_directory_path() / ("focklab_test_" + tag)) {
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(Cli, ClassifyVgDivergentSymbol) {
  const auto r = run("classify-vg", json::parse(R"({"weight": "power:4", "g": "z^5", "p": "inf"})"));
  EXPECT_EQ(r.code, cli::kDivergence);
  EXPECT_EQ(r.out["bounded"], false);
  EXPECT_EQ(r.out["compact"], false);
  for (const char* k : {"operator", "p", "q", "bounded", "compact", "evidence_kind", "profile"}) EXPECT_TRUE(r.out.contains(k)) << k;
}

TEST(Cli, ClassifyVgBoundedSymbol) {
  const auto r = run("classify-vg", json::parse(R"({"weight": "power:4", "g": "z^4", "p": "inf"})"));
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out["bounded"], true);
}

TEST(Cli, NormGaussianCubic) {
  const auto r = run("norm", json::parse(R"({"weight": "gaussian", "f": "z^3", "p": 2})"));
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NEAR(r.out["log_value"].get<double>(), 0.5 * std::log(6 * kPi), 1e-10);
  for (const char* k : {"log_value", "p", "truncation_radius", "tail_log_bound", "nodes"}) EXPECT_TRUE(r.out.contains(k)) << k;
}

TEST(Cli, NormSeriesAsCoefficientArray) {
  const auto r = run("norm", json::parse(R"({"weight": "gaussian", "f": [[0, 0], [0, 0], [0, 0], [1, 0]], "p": 2})"));
  EXPECT_NEAR(r.out["log_value"].get<double>(), 0.5 * std::log(6 * kPi), 1e-10);
}

TEST(Cli, DivergentNorm) {
  const auto r = run("norm", json::parse(R"({"weight": "expr:r", "f": "exp:2", "p": 2, "radius_cap": 20})"));
  EXPECT_EQ(r.code, cli::kDivergence);
  EXPECT_EQ(r.out["divergent"], true);
  EXPECT_EQ(r.out["log_value"], "inf");
  const auto s = run("norm", json::parse(R"({"weight": "expr:r", "f": "exp:2", "p": "inf", "radius_cap": 20})"));
  EXPECT_EQ(s.code, cli::kDivergence);
  EXPECT_EQ(s.out["divergent"], true);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run("norm", json::parse(R"({"f": "z", "p": 2})")).code, cli::kConfigError);
  EXPECT_EQ(run("norm", json::parse(R"({"weight": "power:x", "f": "z", "p": 2})")).code, cli::kConfigError);
  EXPECT_EQ(run("norm", json::parse(R"({"weight": "power:4", "f": "z", "p": "abc"})")).code, cli::kConfigError);
  EXPECT_EQ(run("norm", json::parse(R"({"weight": "expr:x^2", "f": "z", "p": 2})")).code, cli::kConfigError);
  EXPECT_EQ(run("norm", json::parse(R"({"weight": "power:4", "f": "z^", "p": 2})")).code, cli::kConfigError);
  EXPECT_EQ(run("frobnicate", json::object()).code, cli::kConfigError);
  EXPECT_EQ(run("norm", json::array()).code, cli::kConfigError);
  EXPECT_EQ(run("norm", json::parse(R"([{"name": "a", "weight": "gaussian", "f": "1"}, {"name": "a", "weight": "gaussian", "f": "1"}])")).code,
            cli::kConfigError);
  EXPECT_EQ(run("norm", json::parse(R"({"name": "../x", "weight": "gaussian", "f": "1"})")).code, cli::kConfigError);
  EXPECT_EQ(run("covering", json::parse(R"({"weight": "power:4", "region_radius": 15, "budget": 10})")).code, cli::kConfigError);
}

TEST(Cli, BatchTakesLargestExitCode) {
  const auto r = run("classify-vg", json::parse(R"([
    {"weight": "power:4", "g": "z^3", "p": 2},
    {"weight": "power:4", "g": "z^4", "p": 2},
    {"weight": "power:4", "g": "z", "p": "bogus"}])"));
  EXPECT_EQ(r.code, cli::kDivergence > cli::kConfigError ? cli::kDivergence : cli::kConfigError);
  ASSERT_TRUE(r.out.is_array());
  ASSERT_EQ(r.out.size(), 3u);
  EXPECT_EQ(r.out[0]["bounded"], true);
  EXPECT_EQ(r.out[1]["bounded"], false);
  EXPECT_TRUE(r.out[2].contains("error"));
}

TEST(Cli, WritesArtifacts) {
  TempDir dir("artifacts");
  EXPECT_EQ(run("weight-check", json::parse(R"({"name": "w", "weight": "power:4"})"), dir.path()).code, cli::kOk);
  EXPECT_TRUE(fs::exists(dir.path() / "w.json"));
  const std::string csv = slurp(dir.path() / "w.profile.csv");
  EXPECT_EQ(csv.rfind("r,log_value\r\n", 0), 0u);

  EXPECT_EQ(run("witness-mg", json::parse(R"({"name": "m", "weight": "power:4", "g": "z", "p": 2, "n_range": [0, 5]})"), dir.path()).code,
            cli::kOk);
  EXPECT_EQ(slurp(dir.path() / "m.csv").rfind("n,ratio\r\n", 0), 0u);

  EXPECT_EQ(run("covering", json::parse(R"({"name": "c", "constant_radius": 1, "region_radius": 4})"), dir.path()).code, cli::kOk);
  std::istringstream lat(slurp(dir.path() / "c.lattice.csv"));
  const auto rows = io::read_csv(lat);
  ASSERT_GT(rows.size(), 1u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "y", "t"}));
  const json lj = json::parse(slurp(dir.path() / "c.lattice.json"));
  EXPECT_EQ(lj["centers"].size(), rows.size() - 1);
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
  TempDir a("idem_a"), b("idem_b");
  const json cfg = json::parse(R"([
    {"name": "n", "weight": "power:4", "f": "z^5", "p": 2},
    {"name": "s", "weight": "gaussian", "f": "z^4", "p": "inf"}])");
  ASSERT_EQ(run("norm", cfg, a.path()).code, cli::kOk);
  ASSERT_EQ(run("norm", cfg, b.path()).code, cli::kOk);
  const json cov = json::parse(R"({"name": "cov", "weight": "power:4", "region_radius": 3})");
  ASSERT_EQ(run("covering", cov, a.path()).code, cli::kOk);
  ASSERT_EQ(run("covering", cov, b.path()).code, cli::kOk);
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(a.path())) {
    const auto other = b.path() / e.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
    ++n;
  }
  EXPECT_EQ(n, 2u + 3u);
}

TEST(Cli, VerdictIgMgAndInclusion) {
  auto r = run("verdict-igmg", json::parse(R"({"g": "z", "p": 2, "q": 2, "operator": "Mg"})"));
  EXPECT_EQ(r.out["bounded"], false);
  r = run("inclusion-diagnostic", json::parse(R"({"weight": "gaussian", "p": 2, "q": 4, "n_range": [1, 10]})"));
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(r.out.contains("classification"));
}

TEST(Cli, LocalChecks) {
  const auto r = run("local-checks", json::parse(R"({"weight": "gaussian", "f": "1", "p": 2, "beta": 0, "points": [[1, 1]]})"));
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NEAR(r.out["subharmonic"][0]["ratio"].get<double>(), 1 / kPi, 1e-12);
}

TEST(Cli, SampleConfigsRun) {
  // The slow covering and full verification configs are exercised by the acceptance suite.
  const std::map<std::string, std::pair<std::string, int>> expected = {
      {"classify_vg_power4_z5.json", {"classify-vg", cli::kDivergence}},
      {"classify_vg_thresholds.json", {"classify-vg", cli::kDivergence}},
      {"covering_constant.json", {"covering", cli::kOk}},
      {"inclusion_diagnostic.json", {"inclusion-diagnostic", cli::kOk}},
      {"local_checks_power4.json", {"local-checks", cli::kOk}},
      {"lp_norm_power4.json", {"lp-norm", cli::kOk}},
      {"norm_batch.json", {"norm", cli::kOk}},
      {"norm_gaussian_z3.json", {"norm", cli::kOk}},
      {"verdict_igmg.json", {"verdict-igmg", cli::kOk}},
      {"weight_check_builtins.json", {"weight-check", cli::kOk}},
      {"witness_d.json", {"witness-d", cli::kOk}},
      {"witness_mg_power4.json", {"witness-mg", cli::kOk}},
  };
  TempDir dir("configs");
  for (const auto& [file, want] : expected) {
    const json cfg = io::read_json_file(std::string(FOCKLAB_CONFIG_DIR) + "/" + file);
    EXPECT_EQ(run(want.first, cfg, dir.path()).code, want.second) << file;
  }
}

}  // namespace
