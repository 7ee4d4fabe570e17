#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "focklab/io.hpp"

namespace {

using namespace focklab;
using namespace focklab::io;

TEST(Csv, FieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_field(""), "");
}

TEST(Csv, WriterUsesCrlfAndHeader) {
  std::ostringstream os;
  CsvWriter w(os, {"x", "y,z"});
  w.row({1.5, -2.0});
  EXPECT_EQ(os.str(), "x,\"y,z\"\r\n1.5,-2\r\n");
}

TEST(Csv, ReadBackQuotedFields) {
  std::ostringstream os;
  CsvWriter w(os, {"name", "note"});
  w.row(std::vector<std::string>{"a,b", "he said \"x\""});
  std::istringstream is(os.str());
  const auto rows = read_csv(is);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"name", "note"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"a,b", "he said \"x\""}));
}

TEST(Csv, NumbersRoundTrip) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    EXPECT_EQ(std::strtod(csv_number(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(csv_number(kInf), "inf");
  EXPECT_EQ(csv_number(kNegInf), "-inf");
}

TEST(Csv, ProfileAndLatticeHeaders) {
  GrowthProfile g;
  g.radii = {1, 2};
  g.log_values = {0.5, kNegInf};
  std::ostringstream a;
  write_profile_csv(a, g);
  EXPECT_EQ(a.str(), "r,log_value\r\n1,0.5\r\n2,-inf\r\n");
  CoveringLattice lat;
  lat.centers = {cplx(0, 0), cplx(1, -0.5)};
  lat.radii = {0.25, 0.125};
  std::ostringstream b;
  write_lattice_csv(b, lat);
  EXPECT_EQ(b.str(), "x,y,t\r\n0,0,0.25\r\n1,-0.5,0.125\r\n");
}

TEST(Json, NonFiniteNumbers) {
  EXPECT_EQ(number(kInf), "inf");
  EXPECT_EQ(number(kNegInf), "-inf");
  EXPECT_EQ(number(std::nan("")), "nan");
  EXPECT_EQ(number(2.5), 2.5);
  EXPECT_EQ(to_double(json("-inf"), "x"), kNegInf);
  EXPECT_THROW(to_double(json("abc"), "x"), ConfigError);
}

TEST(Json, Exponents) {
  EXPECT_TRUE(parse_exponent(json("inf")).is_infinite());
  EXPECT_EQ(parse_exponent(json(2)).value(), 2.0);
  EXPECT_EQ(parse_exponent(json("1.5")).value(), 1.5);
  EXPECT_THROW(parse_exponent(json(-1)), ConfigError);
  EXPECT_THROW(parse_exponent(json::array()), ConfigError);
  EXPECT_EQ(exponent_json(Exponent::infinity()), "inf");
}

TEST(Series, JsonRoundTrip) {
  const EntireFunction f({cplx(1, -2), cplx(0, 0), cplx(0.5, 3)});
  const json j = series_json(f);
  EXPECT_EQ(j.dump(), "[[1.0,-2.0],[0.0,0.0],[0.5,3.0]]");
  const auto g = series_from_json_array(j);
  EXPECT_EQ(g.coefficients(), f.coefficients());
  EXPECT_EQ(series_from_json_array(json::parse("[1, [0, 2]]")).coefficients()[1], cplx(0, 2));
  EXPECT_THROW(series_from_json_array(json::parse("[[1, 2, 3]]")), ConfigError);
  EXPECT_THROW(series_from_json_array(json::array()), ConfigError);
}

TEST(Series, Shorthand) {
  auto f = parse_series_shorthand("z^5");
  ASSERT_EQ(f.degree(), 5u);
  EXPECT_EQ(f.coefficients()[5], cplx(1));
  f = parse_series_shorthand("2*z^3 - z + 1");
  ASSERT_EQ(f.degree(), 3u);
  EXPECT_EQ(f.coefficients()[0], cplx(1));
  EXPECT_EQ(f.coefficients()[1], cplx(-1));
  EXPECT_EQ(f.coefficients()[2], cplx(0));
  EXPECT_EQ(f.coefficients()[3], cplx(2));
  f = parse_series_shorthand("3");
  EXPECT_TRUE(f.is_constant());
  f = parse_series_shorthand("exp:1.2");
  EXPECT_EQ(f.degree() + 1, kDefaultSeriesTerms);
  EXPECT_EQ(f.provenance().kind, Provenance::Kind::TruncatedExp);
  EXPECT_EQ(parse_series_shorthand("exp:1:10").degree(), 9u);
  EXPECT_THROW(parse_series_shorthand("z^"), Error);
  EXPECT_THROW(parse_series_shorthand("w^2"), Error);
  EXPECT_THROW(parse_series_shorthand("exp:x"), ConfigError);
}

TEST(Json, NormResultFields) {
  NormResult r;
  r.log_value = 1.25;
  r.p = Exponent::finite(2);
  r.truncation_radius = 7;
  r.nodes = 40;
  const json j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"log_value", "p", "truncation_radius", "tail_log_bound", "nodes"}));
  EXPECT_EQ(j["tail_log_bound"], "-inf");
  r.p = Exponent::infinity();
  EXPECT_TRUE(to_json(r).contains("divergent"));
}

TEST(Json, VerdictFields) {
  OperatorVerdict v;
  v.op = OperatorKind::Vg;
  v.p = Exponent::finite(2);
  v.q = Exponent::infinity();
  v.bounded = Tri::Yes;
  v.compact = Tri::Inconclusive;
  v.evidence_kind = "profile";
  const json j = to_json(v);
  EXPECT_EQ(j["operator"], "Vg");
  EXPECT_EQ(j["bounded"], true);
  EXPECT_EQ(j["compact"], "inconclusive");
  EXPECT_FALSE(j.contains("profile"));
  v.profile = GrowthProfile{};
  EXPECT_TRUE(to_json(v).contains("profile"));
}

TEST(Json, ReadFileErrors) {
  EXPECT_THROW(read_json_file("/nonexistent/config.json"), ConfigError);
}

}  // namespace
