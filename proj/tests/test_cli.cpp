#include <gtest/gtest.h>

#include "belyi/acceptance.hpp"
#include "cli.hpp"

using namespace belyi;
using namespace belyi::cli;

namespace {

const Json kEisenstein = {{"base_min_poly", {1, 1, 1}}};
const Json kTower = {{"base_min_poly", {1, 1, 1}}, {"transcendentals", {"t"}}, {"algebraic_ext", {"1", "0", "0", "-t^2 + t"}}};

Json point(const std::string& branch, int k) { return {{"branch", branch}, {"index", k}}; }
Json term(const Json& p, long c) { return {{"point", p}, {"coeff", c}}; }

Json problem(const std::string& cmd, const Json& field, int N, int a, int b, const Json& bundle) {
  Json s{{"command", cmd}, {"curve", {{"N", N}, {"a", a}, {"b", b}}}, {"bundle", bundle}};
  if (!field.is_null()) s["field"] = field;
  return s;
}

Json transcendental_point() {
  return Json::array({Json::array({term({{"x", "t"}, {"y", "u"}}, 1), term("infinity", -1)})});
}

Outcome exec(const Json& spec, Options opt = {}) { return execute(spec.dump(), opt); }

}  // namespace

TEST(Cli, GenusOfTheCubic) {
  auto out = exec({{"command", "genus"}, {"field", kEisenstein}, {"curve", {{"N", 3}, {"a", 1}, {"b", 1}}}});
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  EXPECT_EQ(out.report["result"]["genus"], 1);
}

TEST(Cli, PushforwardOfTheConic) {
  auto out = exec(problem("pushforward", nullptr, 2, 1, 0, Json::array({Json::array()})));
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  EXPECT_EQ(out.report["result"]["splitting"], Json::array({0, -1}));
  const Json w{{"0", {"0", "1/2"}}, {"infinity", {"0", "1/2"}}};
  EXPECT_EQ(out.report["result"]["weights"], w);
}

TEST(Cli, DescendTranscendentalPoint) {
  auto out = exec(problem("descend", kTower, 3, 1, 1, transcendental_point()));
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  const Json& r = out.report["result"];
  EXPECT_EQ(r["verdict"], "NotDefined");
  EXPECT_EQ(r["witness"]["ell"], 0);
  EXPECT_EQ(r["agrees"], true);
}

TEST(Cli, CertificatesReverify) {
  // Invariant class: the fiber over x = t.
  Json D = Json::array({term({{"x", "t"}, {"y", "u"}}, 1), term({{"x", "t"}, {"y", "alpha*u"}}, 1),
                        term({{"x", "t"}, {"y", "-alpha*u - u"}}, 1), term("infinity", -3)});
  auto out = exec(problem("descend", kTower, 3, 1, 1, Json::array({D})));
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  const Json& r = out.report["result"];
  ASSERT_EQ(r["verdict"], "DefinedOverF");
  EXPECT_EQ(r["certificate_verified"], true);
  // The certificate is a bundle in its own right and is defined over F.
  auto again = exec(problem("descend", kTower, 3, 1, 1, r["certificate"]));
  ASSERT_EQ(again.code, kOk) << again.report.dump();
  EXPECT_EQ(again.report["result"]["verdict"], "DefinedOverF");
  EXPECT_EQ(again.report["result"]["certificate"], r["certificate"]);
}

TEST(Cli, ReportsRoundTrip) {
  Json spec = problem("parabolic", kEisenstein, 3, 1, 1,
                      Json::array({Json::array({term(point("0", 0), 1), term("infinity", -1)}), Json::array()}));
  auto a = exec(spec);
  ASSERT_EQ(a.code, kOk) << a.report.dump();
  EXPECT_EQ(Json::parse(a.report.dump()), a.report);
  // The echoed bundle is valid input and reproduces the report.
  spec["bundle"] = a.report["bundle"];
  auto b = exec(spec);
  EXPECT_EQ(b.report.dump(), a.report.dump());
  EXPECT_TRUE(a.report["result"]["violations"].empty());
}

TEST(Cli, DeterministicAcrossRuns) {
  Json spec = problem("verify-e18", kEisenstein, 3, 1, 1,
                      Json::array({Json::array({term(point("1", 0), 1), term(point("0", 0), -1)}), Json::array()}));
  Options opt;
  opt.seed = 7;
  auto a = exec(spec, opt), b = exec(spec, opt);
  ASSERT_EQ(a.code, kOk) << a.report.dump();
  EXPECT_EQ(a.report.dump(2), b.report.dump(2));
  EXPECT_EQ(a.report["result"]["holds"], true);
}

TEST(Cli, CommandFlagOverridesSpec) {
  Json spec = problem("pushforward", nullptr, 2, 1, 0, Json::array({Json::array()}));
  Options opt;
  opt.command = "krull-schmidt";
  auto out = exec(spec, opt);
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  EXPECT_EQ(out.report["command"], "krull-schmidt");
  EXPECT_EQ(out.report["result"]["indecomposable"], true);
}

TEST(Cli, TowerAndFlagsOverF) {
  Json tower{{"command", "verify-tower"},
             {"field", {{"base_min_poly", {1, 0, 1}}}},
             {"tower", {{"N", 4}, {"a", 2}, {"b", 1}, {"M", 2}}},
             {"bundle", Json::array({Json::array()})}};
  auto out = exec(tower);
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  EXPECT_EQ(out.report["result"]["holds"], true);
  EXPECT_EQ(out.report["result"]["transversal"], Json::array({0, 1}));
  auto p = exec(problem("verify-prop1", kEisenstein, 3, 1, 1, Json::array({Json::array({term(point("0", 0), 2)})})));
  EXPECT_EQ(p.report["result"]["holds"], true);
}

TEST(Cli, LspaceBasis) {
  Json spec{{"command", "lspace"},
            {"field", kEisenstein},
            {"curve", {{"N", 3}, {"a", 1}, {"b", 1}}},
            {"divisor", Json::array({term("infinity", 3)})}};
  auto out = exec(spec);
  ASSERT_EQ(out.code, kOk) << out.report.dump();
  EXPECT_EQ(out.report["result"]["dimension"], 3);
}

TEST(Cli, SchemaErrorsExitTwo) {
  EXPECT_EQ(execute("", {}).code, kSchema);
  EXPECT_EQ(execute("{}", {}).code, kSchema);
  EXPECT_EQ(execute("{\"command\": \"genus\"", {}).code, kSchema);
  EXPECT_EQ(exec({{"command", "frobnicate"}}).code, kSchema);
  EXPECT_EQ(exec({{"command", "genus"}, {"curve", {{"N", 3}, {"a", 1}}}}).code, kSchema);
  EXPECT_EQ(exec({{"command", "genus"}, {"curve", {{"N", 3}, {"a", 1}, {"b", 1}, {"c", 0}}}}).code, kSchema);
  EXPECT_EQ(exec(problem("pushforward", nullptr, 2, 1, 0, Json::array({Json::array({term("nowhere", 1)})}))).code,
            kSchema);
  EXPECT_EQ(exec(problem("pushforward", nullptr, 2, 1, 0, Json::array())).code, kSchema);
  auto bad = exec(problem("pushforward", {{"base_min_poly", {1, 1, 1}}}, 3, 1, 1,
                          Json::array({Json::array({term({{"x", "alpha +"}, {"y", "1"}}, 1)})})));
  EXPECT_EQ(bad.code, kSchema);
  EXPECT_EQ(bad.report["error"]["kind"], "schema");
}

TEST(Cli, MathErrorsExitThree) {
  auto gcd = exec({{"command", "genus"}, {"curve", {{"N", 4}, {"a", 2}, {"b", 2}}}});
  EXPECT_EQ(gcd.code, kMath);
  EXPECT_EQ(gcd.report["error"]["kind"], "math");
  EXPECT_NE(gcd.report["error"]["message"].get<std::string>().find("gcd"), std::string::npos);
  EXPECT_EQ(exec({{"command", "genus"}, {"field", {{"base_min_poly", {1, 0, -1}}}}, {"curve", {{"N", 2}, {"a", 1}, {"b", 0}}}}).code,
            kMath);
  // Not a point of the curve.
  EXPECT_EQ(exec(problem("pushforward", nullptr, 2, 1, 0, Json::array({Json::array({term({{"x", "4"}, {"y", "3"}}, 1)})}))).code,
            kMath);
  // The flag check needs a t-free bundle.
  EXPECT_EQ(exec(problem("verify-prop1", kTower, 3, 1, 1, transcendental_point())).code, kMath);
  EXPECT_EQ(exec(problem("pushforward", nullptr, 2, 1, 0, Json::array({Json::array({term(point("1", 3), 1)})}))).code, kMath);
}

TEST(Cli, CorruptedWeightIsReported) {
  Options opt;
  opt.corrupt_weight = true;
  auto out = exec(problem("parabolic", nullptr, 2, 1, 0, Json::array({Json::array()})), opt);
  ASSERT_EQ(out.code, kOk);
  const Json& v = out.report["result"]["violations"];
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v[0].get<std::string>().find("k/m_x"), std::string::npos);
  AcceptanceOptions a;
  a.corrupt_weight = true;
  auto r = run_criterion(1, a);
  EXPECT_FALSE(r.pass);
}
