#include <doctest.h>

#include <cmath>

#include "forge/eval.hpp"
#include "helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("differentiate: power rule") {
  check_same(differentiate(parsed("x^2")), parsed("2*x"));
}

TEST_CASE("differentiate: ln of a symbol is the logarithmic derivative") {
  Expr e = differentiate(apply(Builtin::Ln, symbol("h")));
  check_same(e, parsed("h'(x)/h(x)"));
}

TEST_CASE("differentiate: chain rule through a scaled argument") {
  ParseOptions po;
  po.constants["k"] = Rational(3);
  Expr e = differentiate(parse_expr("sinh(k*x)", po));
  check_same(e, parse_expr("k*cosh(k*x)", po));
}

TEST_CASE("evaluate: basic values") {
  EvalContext ctx;
  ctx.x = 0.0;
  CHECK(to_double(evaluate(parsed("cosh(x)"), ctx)) == doctest::Approx(1.0).epsilon(1e-25));

  ctx.x = 1.0;
  CHECK(to_double(evaluate(parsed("-2/(x+1)^2"), ctx)) == doctest::Approx(-0.5).epsilon(1e-25));

  ctx.x = 2.0;
  CHECK(to_double(evaluate(parsed("exp(-x^2/4)"), ctx)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("evaluate: errors") {
  EvalContext ctx;
  ctx.x = -1.0;
  CHECK_THROWS_AS(evaluate(parsed("ln(x)"), ctx), Error);
  CHECK_THROWS_AS(evaluate(parsed("1/(x+1)"), ctx), Error);
  ctx.x = 1.0;
  CHECK_THROWS_AS(evaluate(symbol("h"), ctx), Error);  // unbound
}

TEST_CASE("evaluate: bound symbol uses polynomial derivatives") {
  EvalContext ctx;
  ctx.x = 2.0;
  ctx.bindings["h"] = Polynomial{{Rational(1), Rational(0), Rational(3)}};  // 1 + 3 t^2
  CHECK(to_double(evaluate(symbol("h", 0, variable()), ctx)) == doctest::Approx(13.0));
  CHECK(to_double(evaluate(symbol("h", 1, variable()), ctx)) == doctest::Approx(12.0));
  CHECK(to_double(evaluate(symbol("h", 2, variable()), ctx)) == doctest::Approx(6.0));
}

TEST_CASE("is_zero: hyperbolic identity on [0.1, 2]") {
  check_zero(parsed("sinh(x)^2 - cosh(x)^2 + 1"), opts_on(0.1, 2.0));
}

TEST_CASE("is_zero: trivial cancellation of symbol derivatives") {
  check_zero(simplify(symbol("h", 1, variable()) - symbol("h", 1, variable())));
}

TEST_CASE("is_zero: s' + s^2 for s = -1/(x+1) is nonzero everywhere") {
  Expr s = parsed("-1/(x+1)");
  Expr e = simplify(differentiate(s) + s * s);
  check_same(e, parsed("2/(x+1)^2"));
  ZeroResult r = is_zero(e, opts_on(0.1, 2.0));
  CHECK(r.verdict == Verdict::NonZero);
  CHECK(r.witness_value > 0.0);
}

TEST_CASE("is_zero: s' - s^2 for s = -1/(x+1) vanishes") {
  Expr s = parsed("-1/(x+1)");
  check_zero(simplify(differentiate(s) - s * s), opts_on(0.1, 2.0));
}

TEST_CASE("simplify: identity cleanups") {
  check_same(simplify(parsed("1*x + 0")), parsed("x"));
  ParseOptions po;
  po.constants["b"] = Rational(1);
  check_same(simplify(parse_expr("(x+b)*(x+b)^(-1)", po)), constant(1));
  check_same(simplify(parsed("2*(1/2)*cosh(x)")), parsed("cosh(x)"));
}

TEST_CASE("simplify: exponent merging and quotient cancellation") {
  check_same(simplify(parsed("x^2*x^3")), parsed("x^5"));
  check_same(simplify(parsed("exp(x)*exp(-x)")), constant(1));
  check_same(simplify(parsed("(x*sin(x))/(sin(x)*x^2)")), parsed("1/x"));
  check_same(simplify(parsed("(x+1)^2/(x+1)")), parsed("x+1"));
  check_same(parsed("x^(1/2)*x^(1/2)"), parsed("x"));
}

TEST_CASE("is_zero: everywhere-singular input is inconclusive") {
  Expr e = apply(Builtin::Ln, parsed("-1 - x^2"));
  ZeroResult r = is_zero(e, opts_on(1.0, 2.0));
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.successes == 0);
}

TEST_CASE("property: differentiation is linear") {
  Rng rng(2024);
  for (int i = 0; i < 25; ++i) {
    Expr e1 = random_expr(rng, 3);
    Expr e2 = random_expr(rng, 3);
    Rational alpha(rng.uniform_int(-3, 3));
    Rational beta(rng.uniform_int(1, 4), 2);
    Expr combined = differentiate(constant(alpha) * e1 + constant(beta) * e2);
    Expr split = constant(alpha) * differentiate(e1) + constant(beta) * differentiate(e2);
    check_zero(simplify(combined - split));
  }
}

TEST_CASE("property: product rule") {
  Rng rng(77);
  for (int i = 0; i < 25; ++i) {
    Expr e1 = random_expr(rng, 3);
    Expr e2 = random_expr(rng, 3);
    Expr lhs = differentiate(e1 * e2);
    Expr rhs = differentiate(e1) * e2 + e1 * differentiate(e2);
    check_zero(simplify(lhs - rhs));
  }
}

TEST_CASE("property: simplify preserves semantics on 100 random expressions") {
  Rng rng(31337);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    Expr e = random_expr(rng, 4);
    ZeroResult r = is_zero(simplify(e - simplify(e)));
    CHECK(r.verdict != Verdict::NonZero);
    if (r.verdict == Verdict::Zero) ++checked;
  }
  CHECK(checked >= 95);  // a few trees may be singular almost everywhere
}

TEST_CASE("derivative matches central differences at second order") {
  Expr e = parsed("sin(x)*exp(x) + x^3");
  Expr de = differentiate(e);
  EvalContext ctx;
  ctx.x = 1.3;
  double exact = to_double(evaluate(de, ctx));

  auto fd = [&](double delta) {
    EvalContext c;
    c.x = 1.3 + delta;
    double hi = to_double(evaluate(e, c));
    c.x = 1.3 - delta;
    double lo = to_double(evaluate(e, c));
    return (hi - lo) / (2 * delta);
  };

  double err1 = std::abs(fd(1e-3) - exact);
  double err2 = std::abs(fd(5e-4) - exact);
  CHECK(err1 < 1e-5);
  CHECK(err2 < err1);
  CHECK(err1 / err2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("uninterpreted symbols record derivative order") {
  Expr h2 = differentiate(symbol("h"), 2);
  CHECK(h2.kind() == Kind::UninterpretedApp);
  CHECK(h2.derivative_order() == 2);
  auto orders = symbol_orders(simplify(h2 + symbol("h")));
  CHECK(orders.at("h") == 2);
}
