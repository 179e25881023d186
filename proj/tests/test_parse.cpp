#include <doctest.h>

#include <string>

#include "helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("parse: quotient with power denominator") {
  Expr e = parsed("-2/(x+1)^2");
  REQUIRE(e.kind() == Kind::Quotient);
  CHECK(e.numerator().is_constant(-2));
  REQUIRE(e.denominator().kind() == Kind::Power);
  CHECK(e.denominator().exponent() == Rational(2));
  CHECK(e.denominator().base().kind() == Kind::Sum);
}

TEST_CASE("parse: declared constants substitute at parse time") {
  ParseOptions po;
  po.constants["c0"] = Rational(2);
  po.constants["c1"] = Rational(3);
  po.constants["k"] = Rational(1, 2);
  Expr e = parse_expr("c0*sinh(k*x) + c1*cosh(k*x)", po);
  Expr built = constant(2) * apply(Builtin::Sinh, constant(Rational(1, 2)) * variable()) +
               constant(3) * apply(Builtin::Cosh, constant(Rational(1, 2)) * variable());
  check_same(e, built);
}

TEST_CASE("parse: unbalanced parenthesis diagnostic with span at end") {
  try {
    parsed("sin(");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.diagnostic().message == "unbalanced parenthesis");
    CHECK(err.diagnostic().span.start == 4);
  }
}

TEST_CASE("parse: error paths") {
  CHECK_THROWS_AS(parsed(""), ParseError);
  CHECK_THROWS_AS(parsed("$"), ParseError);
  CHECK_THROWS_AS(parsed("1.5"), ParseError);     // '.' is not a token
  CHECK_THROWS_AS(parsed("2x"), ParseError);      // juxtaposition is not multiplication
  CHECK_THROWS_AS(parsed("x(3)"), ParseError);
  CHECK_THROWS_AS(parsed("sin x"), ParseError);
  CHECK_THROWS_AS(parsed("sin'(x)"), ParseError);
  CHECK_THROWS_AS(parsed("x')"), ParseError);
  CHECK_THROWS_AS(parsed("(x"), ParseError);
  CHECK_THROWS_AS(parsed("x)"), ParseError);
  CHECK_THROWS_AS(parsed("1/0"), ParseError);     // construction fault becomes a diagnostic
}

TEST_CASE("parse: precedence and associativity") {
  check_same(parsed("2^3^2"), constant(512));        // ^ is right-associative
  check_same(parsed("-x^2"), -power(variable(), 2)); // unary minus binds looser than ^
  check_same(parsed("1-2-3"), constant(-4));
  check_same(parsed("12/8"), constant(Rational(3, 2)));
  check_same(parsed("1+2*3^2"), constant(19));
}

TEST_CASE("parse: non-numeric exponents rewrite through exp/ln") {
  Expr e = parsed("x^x");
  check_same(e, apply(Builtin::Exp, variable() * apply(Builtin::Ln, variable())));
  check_same(parsed("x^(1/2)"), power(variable(), Rational(1, 2)));
}

TEST_CASE("print: fractional powers round trip") {
  for (const char* text : {"x^(1/2)", "2^(1/2)", "(1/2)^(1/3)", "(x+1)^(3/2)"}) {
    Expr e = parse_expr(text);
    check_same(parse_expr(print_expr(e)), e);
  }
}

TEST_CASE("parse: primes mark formal derivatives") {
  Expr e = parsed("h''(x)");
  CHECK(e.kind() == Kind::UninterpretedApp);
  CHECK(e.derivative_order() == 2);
  check_same(parsed("a2'"), symbol("a2", 1, variable()));
}

TEST_CASE("print: spec forms") {
  CHECK(print_expr(parsed("2*x")) == "2*x");
  CHECK(print_expr(parsed("-1/(x+1)")) == "-1/(x+1)");
  CHECK(print_expr(differentiate(apply(Builtin::Ln, symbol("h")))) == "h'(x)/h(x)");
  CHECK(print_expr(parsed("-2/(x+1)^2")) == "-2/(x+1)^2");
}

TEST_CASE("property: print/parse round trip on 150 random expressions") {
  Rng rng(0xF00D);
  for (int i = 0; i < 150; ++i) {
    Expr e = random_expr(rng, 4);
    std::string text = print_expr(e);
    Expr back = parse_expr(text);
    if (!structurally_equal(e, back)) {
      FAIL_CHECK("round trip failed: " << text << " reparsed as " << print_expr(back));
    }
  }
}

TEST_CASE("property: fuzzing never crashes, only diagnostics") {
  Rng rng(0xFADE);
  const std::string alphabet = "x+-*/^()0123456789abchks'\" .,_\t\n\\~%";
  for (int i = 0; i < 10000; ++i) {
    std::string text;
    int len = static_cast<int>(rng.uniform_int(0, 24));
    for (int j = 0; j < len; ++j) {
      if (rng.uniform_int(0, 15) == 0) {
        text += static_cast<char>(rng.uniform_int(1, 255));  // arbitrary byte
      } else {
        text += alphabet[rng.uniform_int(0, static_cast<long long>(alphabet.size()) - 1)];
      }
    }
    try {
      (void)parse_expr(text);
    } catch (const ParseError& err) {
      CHECK(err.diagnostic().span.start <= text.size());
      CHECK(err.diagnostic().span.end <= text.size());
      CHECK(!err.diagnostic().message.empty());
    }
  }
}
