#include <gtest/gtest.h>

#include <sstream>

#include "rmlab/io/commands.hpp"

using namespace rmlab;
using io::json;

namespace {

int run(const std::string& cmd, const json& doc, std::string* out = nullptr, const std::string& format = "json") {
  io::RunConfig c = io::parse_config(doc);
  std::ostringstream os, err;
  int code = io::run_command(cmd, c, "", format, os, err);
  if (out) *out = os.str();
  return code;
}

}  // namespace

TEST(Literals, ExactDecimals) {
  EXPECT_EQ(io::parse_exact("1.25"), Rational(5, 4));
  EXPECT_EQ(io::parse_exact("-3/6"), Rational(-1, 2));
  EXPECT_EQ(io::parse_exact("2e3"), Rational(2000));
  EXPECT_EQ(io::parse_exact("5e-1"), Rational(1, 2));
  EXPECT_EQ(io::parse_exact("+7"), Rational(7));
  for (const char* bad : {"", "x", "1.2.3", "1e", "--1", "1/0"}) EXPECT_THROW(io::parse_exact(bad), InvalidInput) << bad;
}

TEST(Literals, Complex) {
  const hp::Bits b{128};
  auto near = [&](const hp::Complex& z, double re, double im) {
    return std::fabs(z.re.to_double() - re) < 1e-30 && std::fabs(z.im.to_double() - im) < 1e-30;
  };
  EXPECT_TRUE(near(io::parse_complex("i", b), 0, 1));
  EXPECT_TRUE(near(io::parse_complex("2i", b), 0, 2));
  EXPECT_TRUE(near(io::parse_complex("-i", b), 0, -1));
  EXPECT_TRUE(near(io::parse_complex("1/2+i", b), 0.5, 1));
  EXPECT_TRUE(near(io::parse_complex("0.5 - 1.5i", b), 0.5, -1.5));
  EXPECT_TRUE(near(io::parse_complex("1e-3+2e+1i", b), 1e-3, 20));
  EXPECT_TRUE(near(io::parse_complex("3", b), 3, 0));
  EXPECT_THROW(io::parse_complex("", b), InvalidInput);
  EXPECT_THROW(io::parse_complex("ai", b), InvalidInput);
}

TEST(Literals, FieldIdealLattice) {
  QuadField K(5);
  EXPECT_EQ(io::parse_ideal(json::parse(R"({"D": 5, "ideal": [4, 0, 4]})"), K), QuadIdeal::principal(QuadElem(K, 4)));
  EXPECT_EQ(io::parse_ideal_flag("4", K), QuadIdeal::principal(QuadElem(K, 4)));
  EXPECT_EQ(io::parse_ideal_flag("11,3,1", K).norm(), 11);
  EXPECT_THROW(io::parse_ideal_flag("11,2,1", K), InvalidInput);
  EXPECT_THROW(io::parse_ideal(json::parse("[1, 2]"), K), InvalidInput);
  Pseudolattice L = io::parse_pseudolattice(json::parse(R"({"D": 5, "l1": ["1", "0"], "l2": ["1/2", "1/2"]})"));
  EXPECT_EQ(L.l2(), QuadElem::omega(K));
  EXPECT_THROW(io::parse_pseudolattice(json::parse(R"({"D": 4, "l1": [1, 0], "l2": [0, 1]})")), InvalidInput);
  EXPECT_THROW(io::parse_pseudolattice(json::parse(R"({"D": 5, "l1": [1, 0], "l2": [2, 0]})")), InvalidInput);
  EXPECT_EQ(io::parse_elem_flag("1/2,-3", 5), QuadElem(5, Rational(1, 2), -3));
}

TEST(Config, RoundTrip) {
  const json raw = json::parse(R"({
    "precision_bits": 160,
    "target_abs_err": "1e-40",
    "field": {"D": 5},
    "stark": {"L": [4, 0, 4], "l0": ["2/2", "0.0"]},
    "theta": {"lattice": {"D": 5, "l1": ["4", "0"], "l2": ["2", "2"]}, "m0": ["3/9", "0"], "v": ["i", "2i"]},
    "bc": {"beta": "2", "gamma": "2/4", "twist": 3}
  })");
  io::RunConfig c = io::parse_config(raw);
  EXPECT_EQ(c.precision_bits, 160);
  EXPECT_EQ(c.ctx().target_abs_err, 1e-40);
  const json once = io::emit_config(c);
  EXPECT_EQ(once["stark"]["l0"], json::array({"1", "0"}));
  EXPECT_EQ(once["theta"]["m0"], json::array({"1/3", "0"}));
  EXPECT_EQ(once["bc"]["gamma"], "1/2");
  const json twice = io::emit_config(io::parse_config(once));
  EXPECT_EQ(once.dump(), twice.dump());
}

TEST(Config, Rejections) {
  EXPECT_THROW(io::parse_config_text("{"), InvalidInput);
  EXPECT_THROW(io::parse_config_text("[]"), InvalidInput);
  EXPECT_THROW(io::parse_config_text(R"({"field": {"D": 9}})"), InvalidInput);
  EXPECT_THROW(io::parse_config_text(R"({"precision_bits": 32})"), InvalidInput);
  EXPECT_THROW(io::parse_config_text(R"({"target_abs_err": "small"})"), InvalidInput);
  EXPECT_THROW(io::parse_config_text(R"({"stark": {"l0": [1, 0]}})"), InvalidInput);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(run("cyclotomic table", json{{"cyclotomic", {{"max_n", 8}}}}), io::ok);
  EXPECT_EQ(run("cyclotomic table", json{{"cyclotomic", {{"max_n", 8}, {"tol", "1e-60"}}}}), io::residual_violation);
  EXPECT_EQ(run("bc kms", json{{"bc", {{"beta", "1"}}}}), io::invalid_input);
  EXPECT_EQ(run("stark compute", json{{"field", {{"D", 5}}}, {"stark", {{"L", {1, 0, 1}}}}}), io::invalid_input);
  EXPECT_EQ(run("stark conjecture",
                json{{"field", {{"D", 5}}}, {"conjecture", {{"modulus", {4, 0, 4}}, {"search_norm", 3}}}}),
            io::convergence_failure);
  EXPECT_EQ(run("no such", json::object()), io::invalid_input);
  EXPECT_EQ(run("lattice dual", json::object()), io::invalid_input);
}

TEST(Commands, ThetaChecks) {
  std::string out;
  EXPECT_EQ(run("theta check-fe", json{{"field", {{"D", 5}}}, {"theta", {{"v", "1/2+i"}, {"modulus", 4}}}}, &out),
            io::ok);
  json j = json::parse(out);
  EXPECT_EQ(j["command"], "theta check-fe");
  EXPECT_EQ(j["result"]["cases"][0]["eps"], json::array({"9", "4"}));
  EXPECT_EQ(run("theta check-poisson",
                json{{"field", {{"D", 2}}}, {"poisson", {{"t", "0.7"}, {"lambda0", "0.2+0.1i"}, {"v", "1/2+i"}}}}),
            io::ok);
  EXPECT_EQ(run("theta check-poisson", json{{"poisson", {{"lattice_type", "z2"}, {"kind", "plain"}}}}), io::ok);
  EXPECT_EQ(run("theta check-poisson", json{{"poisson", {{"lattice_type", "torus"}}}}), io::invalid_input);
}

TEST(Commands, LatticeReports) {
  std::string out;
  json doc = json::parse(R"({"lattice": {"lattice": {"D": 5, "l1": ["1", "0"], "l2": ["1/2", "1/2"]}}})");
  EXPECT_EQ(run("lattice dual", doc, &out), io::ok);
  json j = json::parse(out);
  EXPECT_EQ(j["result"]["conductor"], "1");
  doc = json::parse(R"({"lattice": {"L1": {"D": 5, "l1": ["1", "0"], "l2": ["0", "1"]},
                                     "L2": {"D": 5, "l1": ["1", "0"], "l2": ["3", "1"]}}})");
  EXPECT_EQ(run("lattice classify", doc, &out), io::ok);
  EXPECT_TRUE(json::parse(out)["result"]["isomorphic"].get<bool>());
}

TEST(Commands, CsvAndDeterminism) {
  std::string a, b, csv;
  const json doc{{"bc", {{"beta", "2"}, {"gamma", "1/5"}, {"twist", 2}}}};
  run("bc kms", doc, &a);
  run("bc kms", doc, &b);
  EXPECT_EQ(a, b);
  run("bc kms", doc, &csv, "csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "beta,gamma,twist,value_re,value_im,tail_bound");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}
