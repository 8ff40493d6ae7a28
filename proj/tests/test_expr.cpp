#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "pqbask/errors.hpp"
#include "pqbask/expr.hpp"

using namespace pqbask;

namespace {
std::size_t parse_offset(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no parse error for " << text);
  return 0;
}
}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse("x^2")(3.0) == 9.0);
  CHECK(parse("sin(x^2)")(1.0) == doctest::Approx(0.8414709848078965).epsilon(1e-15));
  CHECK(parse("1/(1+x^2)")(1.0) == 0.5);
  CHECK(Expr::constant(1.0)(123.0) == 1.0);
  CHECK(parse("  2 + 3 * x ^ 2 ")(2.0) == 14.0);
  CHECK(parse("2+3*x^2")(2.0) == 14.0);
  CHECK(parse("2^3^2")(0.0) == 512.0);
  CHECK(parse("-x^2")(3.0) == -9.0);
  CHECK(parse("2^-1")(0.0) == 0.5);
  CHECK(parse("1.5e2*x")(2.0) == 300.0);
  CHECK(parse("abs(x-3)+sqrt(x)+exp(0)+cos(0)")(4.0) == 5.0);
  CHECK(parse("x/2/2")(8.0) == 2.0);
  CHECK(parse("x-1-1")(3.0) == 1.0);
  CHECK(parse("n^2+1", "n")(3.0) == 10.0);
}

TEST_CASE("parse errors carry offsets") {
  CHECK(parse_offset("x+") == 2);
  CHECK(parse_offset("y") == 0);
  CHECK(parse_offset("2*foo(x)") == 2);
  CHECK(parse_offset("(x") == 2);
  CHECK(parse_offset("x)") == 1);
  CHECK(parse_offset("sin x") == 4);
  CHECK(parse_offset("") == 0);
  CHECK_THROWS_AS(parse("x", "n"), ParseError);
  try {
    parse("x+");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("expected") != std::string::npos);
    CHECK(msg.find("offset 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(std::string(500, '(') + "x" + std::string(500, ')')), ParseError);
}

TEST_CASE("print then parse is idempotent") {
  const std::vector<std::string> corpus{
      "x^2", "sin(x^2)", "1/(1+x^2)", "2+3*x^2", "-x^-2", "2^3^2", "abs(-x)*exp(x/3)",
      "sqrt(x)-cos(2*x)+0.1", "((x))", "1e-3*x^0.5", "x/2/3-x-1-2"};
  for (const auto& text : corpus) {
    const Expr once = parse(text);
    const Expr twice = parse(once.to_string());
    CHECK(once == twice);
    CHECK(twice.to_string() == once.to_string());
    for (double x : {0.25, 1.0, 3.5}) CHECK(once(x) == twice(x));
  }
}

TEST_CASE("integer powers are exact") {
  const Expr sq = parse("x^2");
  for (double t : {0.0, 1.0, 2.5, 10.0}) CHECK(sq(t) == t * t);
  const Expr cube = parse("x^3");
  CHECK(cube(1.1) == 1.1 * 1.1 * 1.1);
  CHECK(parse("x^0")(0.0) == 1.0);
}

TEST_CASE("composition") {
  const Expr f = parse("sin(x)");
  CHECK(f.compose_square()(2.0) == doctest::Approx(-0.7568024953079283).epsilon(1e-15));
  CHECK(parse("1/(1+x)").compose_square()(1.0) == 0.5);
  const Expr g = parse("x+1").compose(parse("2*x"));
  CHECK(g(3.0) == 7.0);
  CHECK(parse(f.compose_square().to_string())(2.0) == f.compose_square()(2.0));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(parse("1/x")(0.0), EvaluationError);
  CHECK_THROWS_AS(parse("sqrt(x)")(-1.0), EvaluationError);
  CHECK_THROWS_AS(parse("x^0.5")(-1.0), EvaluationError);
  CHECK_THROWS_AS(parse("exp(x)")(1000.0), EvaluationError);
  CHECK(parse("x^0.5")(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(parse("x^-1")(4.0) == 0.25);
}
