#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "leafchar/error.hpp"
#include "leafchar/numeric/evaluate.hpp"
#include "leafchar/numeric/taylor.hpp"
#include "leafchar/reeb/profile.hpp"

using namespace leafchar;
using nlohmann::json;

namespace {

const json& golden() {
  static const json j = [] {
    std::ifstream in(LEAFCHAR_GOLDEN_JSON);
    REQUIRE(in.good());
    return json::parse(in);
  }();
  return j;
}

bool close(const Real& a, const std::string& ref, double rel) {
  Real b(ref);
  Real scale = abs(b) > 0 ? Real(abs(b)) : Real(1);
  return abs(a - b) <= rel * scale;
}

}  // namespace

TEST_CASE("parser: precedence and exact numbers") {
  CHECK(parse_expression("1 + 2*3")->to_string() == parse_expression("1 + (2*3)")->to_string());
  CHECK(parse_expression("-t^2")->kind == Ast::Kind::Neg);
  CHECK(parse_expression("0.25")->value == Rational(1, 4));
  auto ctx = ContextBuilder().variable("x").variable("y").build();
  Expr e = to_expr(*parse_expression("(x + y)^2 - x*x - 2*x*y"), ctx);
  CHECK(e.to_string() == "y^2");
  CHECK(expr_equal(to_expr(*parse_expression("x / (2*x)"), ctx), Expr(Rational(1, 2))));
}

TEST_CASE("parser: errors") {
  CHECK_THROWS_AS(parse_expression("1 +"), Error);
  CHECK_THROWS_AS(parse_expression("(t"), Error);
  CHECK_THROWS_AS(parse_expression("t $ 2"), Error);
  try {
    parse_expression("t + * 2");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  auto ctx = ContextBuilder().variable("x").build();
  CHECK_THROWS_AS(to_expr(*parse_expression("z"), ctx), Error);
  CHECK_THROWS_AS(to_expr(*parse_expression("x^x"), ctx), Error);
}

TEST_CASE("taylor: elementary identities") {
  PrecisionGuard g(200);
  Real t0("0.3");
  Taylor x = Taylor::variable(t0, 8);
  Taylor one = sin(x) * sin(x) + cos(x) * cos(x);
  CHECK(abs(one[0] - 1) < Real("1e-55"));
  for (unsigned k = 1; k <= 8; ++k) CHECK(abs(one[k]) < Real("1e-55"));
  Taylor l = log(exp(x));
  for (unsigned k = 0; k <= 8; ++k) CHECK(abs(l[k] - x[k]) < Real("1e-55"));
  Taylor q = pow(x, -3) * pow(x, 3);
  CHECK(abs(q[0] - 1) < Real("1e-55"));
  CHECK(abs(q[4]) < Real("1e-55"));
}

TEST_CASE("default profile values match the high-precision oracle") {
  PrecisionGuard g(256);
  ReebProfile f = default_profile();
  CHECK(close(f.jet(Real("0.5"), 0)[0], golden()["f_half"], 1e-45));
  CHECK(close(f.jet(Real("0.3"), 0)[0], golden()["f_0.3"], 1e-45));
  for (const auto& row : golden()["grid"]) {
    unsigned k = row["k"];
    std::vector<Real> d = f.jet(to_real(tail_point(k)), 8);
    for (unsigned p = 0; p <= 8; ++p) CHECK(close(d[p], row["derivatives"][p], 1e-40));
  }
}

TEST_CASE("limit report matches the oracle ratios") {
  PrecisionGuard g(256);
  LimitReport r = check_limit_conditions(default_profile(), 6, 6, 256);
  CHECK(r.passed());
  CHECK(r.increasing);
  REQUIRE(r.exceeds_threshold.has_value());
  CHECK(*r.exceeds_threshold);
  for (const auto& s : r.ratios) {
    CHECK(s.decreasing);
    REQUIRE(s.below_threshold.has_value());
    CHECK(*s.below_threshold);
    for (const auto& sample : s.samples) {
      const auto& row = golden()["grid"][sample.k - 1];
      CHECK(close(sample.ratio, row["ratio"][std::to_string(s.n)], 1e-40));
      CHECK(close(sample.ratio_derivative, row["ratio_derivative"][std::to_string(s.n)], 1e-40));
    }
  }
  for (unsigned k = 1; k <= 6; ++k)
    CHECK(close(r.second_over_first[k - 1], golden()["grid"][k - 1]["second_over_first"], 1e-40));
}

TEST_CASE("profile conditions") {
  std::vector<Rational> grid = {0, Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(9, 10)};
  ProfileReport good = check_profile_conditions(default_profile(), grid, 6, 256);
  for (const auto& c : good.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);

  ProfileReport bad = check_profile_conditions(profile_from_expression("t^2"), grid, 6, 256);
  CHECK_FALSE(bad.passed());
  bool divergence_failed = false;
  for (const auto& c : bad.checks)
    if (c.name.find("diverges") != std::string::npos && !c.passed) divergence_failed = true;
  CHECK(divergence_failed);

  ProfileReport odd = check_profile_conditions(profile_from_expression("t^3"), grid, 4, 128);
  CHECK_FALSE(odd.checks[1].passed);

  CHECK_THROWS_AS(check_profile_conditions(default_profile(), {Rational(1)}, 4, 128), Error);
}

TEST_CASE("limit conditions on a non-default profile have no thresholds") {
  LimitReport r = check_limit_conditions(profile_from_expression("t^2"), 3, 3, 128);
  CHECK_FALSE(r.exceeds_threshold.has_value());
  CHECK_FALSE(r.increasing);
  CHECK_FALSE(r.passed());
}

TEST_CASE("precision too low for the tail is reported") {
  // f' vanishes identically for a constant profile
  CHECK_THROWS_AS(check_limit_conditions(profile_from_expression("1"), 2, 2, 64), Error);
}

TEST_CASE("evaluate Expr numerically") {
  PrecisionGuard g(128);
  auto ctx = ContextBuilder().variable("x").variable("y").build();
  Expr e = to_expr(*parse_expression("(x^2 + 1)/(y - 3)"), ctx);
  Real v = evaluate(e, {Real(2), Real(5)});
  CHECK(abs(v - Real(5) / 2) < Real("1e-30"));
  CHECK_THROWS_AS(evaluate(e, {Real(2), Real(3)}), Error);
  CHECK_THROWS_AS(evaluate(e, {Real(2), std::nullopt}), Error);
}
