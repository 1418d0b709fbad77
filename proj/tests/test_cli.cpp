// Copyright 2026 The fedosov-torus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "fedosov/cli.hpp"
#include "fedosov/transport.hpp"

using namespace fedosov;
using namespace fedosov::cli;

namespace {

json term(std::vector<int> idx, std::vector<int> freq, const char* re, const char* im = "0") {
  return {{"indices", idx}, {"frequency", freq}, {"re", re}, {"im", im}};
}

json mode(std::vector<int> freq, const char* re, const char* im = "0") {
  return {{"frequency", freq}, {"re", re}, {"im", im}};
}

// A real connection component 2cos(x₁) in slot 001.
json cosine_connection() {
  return json::array({term({0, 0, 1}, {1, 0}, "1"), term({0, 0, 1}, {-1, 0}, "1")});
}

json run_json(json config, std::uint64_t seed = 1) { return run(parse_config(config), seed); }

} // namespace

TEST(Config, ParsesExactRationals) {
  JobConfig cfg = parse_config({{"connection", json::array({term({0, 1, 1}, {0, 0}, "-3/7")})}});
  ASSERT_TRUE(cfg.connection.has_value());
  EXPECT_EQ((*cfg.connection)(1, 0, 1).mean(), ParamCoeff(Rational(-3, 7)));
  EXPECT_EQ(cfg.connection_mode, ConnectionMode::explicit_terms);
  EXPECT_EQ(cfg.command, "suite");
  EXPECT_EQ(cfg.N, 6);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config({{"connection", json::array({term({0, 0, 1}, {0, 0}, "1/0")})}}),
               ConfigError);
  EXPECT_THROW(parse_config({{"connection", json::array({term({0, 0, 1}, {0, 0}, "0.5")})}}),
               ConfigError);
  EXPECT_THROW(parse_config({{"typo", 1}}), ConfigError);
  EXPECT_THROW(parse_config({{"N", 2}}), ConfigError);
  EXPECT_THROW(parse_config({{"command", "unknown"}}), ConfigError);
  EXPECT_THROW(parse_config({{"symmetrization", "loose"}}), ConfigError);
  EXPECT_THROW(parse_config({{"A", json::array({term({0, 0, 2}, {0, 0}, "1")})}}), ConfigError);
  EXPECT_THROW(parse_config({{"F", json::array({mode({1}, "1")})}}), ConfigError);
  json extra = term({0, 0, 1}, {0, 0}, "1");
  extra["colour"] = "red";
  EXPECT_THROW(parse_config({{"A", json::array({extra})}}), ConfigError);
}

TEST(Config, RequiresRealGeometricData) {
  EXPECT_THROW(parse_config({{"connection", json::array({term({0, 0, 1}, {1, 0}, "1")})}}),
               ConfigError);
  EXPECT_THROW(parse_config({{"H", json::array({mode({0, 0}, "0", "1")})}}), ConfigError);
  EXPECT_NO_THROW(parse_config({{"connection", cosine_connection()}}));
  // F and G may be complex.
  EXPECT_NO_THROW(parse_config({{"F", json::array({mode({1, 0}, "1")})}}));
}

TEST(Config, SymmetrizationPolicies) {
  json clash = json::array({term({0, 0, 1}, {0, 0}, "1"), term({0, 1, 0}, {0, 0}, "2")});
  EXPECT_THROW(parse_config({{"A", clash}}), ConfigError);
  JobConfig cfg = parse_config({{"A", clash}, {"symmetrization", "auto-symmetrize"}});
  ASSERT_TRUE(cfg.A.has_value());
  EXPECT_FALSE(cfg.A->is_zero());
}

TEST(Render, ExactStrings) {
  EXPECT_EQ(render(Rational(-3, 7)), "-3/7");
  EXPECT_EQ(render_pi(ParamCoeff(Rational(1, 2)), 2), "pi^2 * 1/2");
  EXPECT_EQ(render_pi(ParamCoeff(), 2), "0");
  EXPECT_EQ(render(ScalarFn::constant(1, Complex(1))), "1");
  FormalScalar s(-1, {ParamCoeff(0), ParamCoeff(Rational(5, 3))}, 2);
  json r = render(s);
  EXPECT_EQ(r["coefficients"]["nu^-1"], "0");
  EXPECT_EQ(r["coefficients"]["nu^0"], "pi^2 * 5/3");
}

TEST(Run, FlatStarAgreesWithMoyal) {
  json report = run_json({{"command", "star"}, {"connection", "flat"}});
  EXPECT_EQ(report["results"]["moyal_agreement"], true);
  EXPECT_EQ(report["verdict"], "pass");
  EXPECT_EQ(exit_code(report), kOk);
}

TEST(Run, FlatTraceDensityIsOne) {
  json report = run_json({{"command", "trace-density"}, {"connection", "flat"}});
  EXPECT_EQ(report["results"]["rho"], json::array({"1"}));
  EXPECT_EQ(report["verdict"], "pass");
}

TEST(Run, MomentResidualsVanish) {
  json report = run_json({{"command", "moment-residual"}, {"connection", cosine_connection()}});
  EXPECT_EQ(report["verdict"], "pass");
  const json& res = report["results"]["residuals"];
  EXPECT_EQ(res["qh_formula"], "0");
  EXPECT_EQ(res["toshow_pointwise"], json::array({"0"}));
  for (const char* key : {"difference", "toshow"})
    for (const auto& [k, v] : res[key]["coefficients"].items()) EXPECT_EQ(v, "0") << key << k;
}

TEST(Run, ZeroMeanIsEnforced) {
  json cfg = {{"command", "moment-residual"}, {"H", json::array({mode({0, 0}, "1")})}};
  EXPECT_THROW(run_json(cfg), ConfigError);
  json timed = {{"command", "moment-residual"},
                {"H", json::array({{{"frequency", {1, 0}}, {"re", "1"}, {"t_power", 1}},
                                   {{"frequency", {-1, 0}}, {"re", "1"}, {"t_power", 1}}})}};
  EXPECT_THROW(run_json(timed), ConfigError);
}

TEST(Run, CapViolationsAreReported) {
  EXPECT_THROW(run_json({{"command", "transport"}, {"N", 4}, {"t_cap", 0}}), ParamCapError);
  EXPECT_THROW(run_json({{"command", "heisenberg"}, {"flow_order", 3}, {"t_cap", 2}}),
               ParamCapError);
}

TEST(Run, ReportsAreDeterministic) {
  json cfg = {{"command", "curvature"}, {"N", 4}};
  EXPECT_EQ(dump(run_json(cfg, 7)), dump(run_json(cfg, 7)));
  EXPECT_NE(dump(run_json(cfg, 7)), dump(run_json(cfg, 8)));
}

TEST(Suite, LowOrderSkipsLeadingTerm) {
  json report = run_json({{"N", 3}});
  EXPECT_EQ(report["verdict"], "pass");
  ASSERT_EQ(report["criteria"].size(), 13u);
  EXPECT_EQ(report["criteria"][5]["assertions"]["curvature/leading_term"],
            "skipped: order too low");
}

TEST(Suite, FlatConnectionDensity) {
  json report = run_json({{"N", 3}, {"connection", "flat"}});
  EXPECT_EQ(report["criteria"][0]["results"]["trace-density"]["rho"], json::array({"1"}));
  EXPECT_EQ(report["criteria"][7]["results"]["trace-density"]["rho"], json::array({"1"}));
  // Star axioms on a nonflat connection are not applicable.
  EXPECT_EQ(report["criteria"][3]["assertions"]["star"], "skipped: needs a nonflat connection");
}

TEST(Suite, ExitCodes) {
  json report = {{"verdict", "fail"}};
  EXPECT_EQ(exit_code(report), kAssertion);
  report["error"] = {{"kind", "cap"}};
  EXPECT_EQ(exit_code(report), kCap);
  report["error"] = {{"kind", "other"}};
  EXPECT_EQ(exit_code(report), kOther);
}
