#include <doctest.h>

#include "forge/diffop.hpp"
#include "forge/job.hpp"
#include "helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("op_mul: D composed with multiplication by x") {
  DiffOp lhs = op_mul(DiffOp::d(), DiffOp::mul_by(variable()));
  DiffOp rhs = DiffOp::from_coeffs({constant(1), variable()});  // x D + 1
  CHECK(op_equal(lhs, rhs).equal());
  check_same(lhs.coeff(0), constant(1));
  check_same(lhs.coeff(1), variable());
}

TEST_CASE("op_mul: (D + s)(D - s) = D^2 - (s' + s^2) for uninterpreted s") {
  Expr s = symbol("s");
  DiffOp plus = op_add(DiffOp::d(), DiffOp::mul_by(s));
  DiffOp minus = op_sub(DiffOp::d(), DiffOp::mul_by(s));
  DiffOp prod = op_mul(plus, minus);
  REQUIRE(prod.order() == 2);
  check_zero(prod.coeff(1));
  check_zero(simplify(prod.coeff(0) + differentiate(s) + s * s));
  check_same(prod.coeff(2), constant(1));
}

TEST_CASE("op_mul: identity is neutral") {
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    DiffOp a = random_diffop(rng, 3);
    CHECK(op_equal(op_mul(a, DiffOp::identity()), a).equal());
    CHECK(op_equal(op_mul(DiffOp::identity(), a), a).equal());
  }
}

TEST_CASE("op_add: cancellation and the Klein-Gordon x-part") {
  CHECK(op_add(DiffOp::d(), op_neg(DiffOp::d())).is_zero_op());
  DiffOp L1 = op_add(DiffOp::d(2), DiffOp::mul_by(symbol("V")));
  REQUIRE(L1.order() == 2);
  check_same(L1.coeff(0), symbol("V"));

  Rng rng(12);
  DiffOp a = random_diffop(rng, 3);
  CHECK(op_equal(op_add(a, DiffOp::zero()), a).equal());
}

TEST_CASE("op_apply: annihilation examples") {
  check_same(op_apply(DiffOp::d(2), parsed("x+1")), constant(0));
  DiffOp L = DiffOp::from_coeffs({parsed("-2/x^2"), constant(0), constant(1)});
  check_same(op_apply(L, parsed("x^2")), constant(0));
}

TEST_CASE("op_equal: reports the offending power") {
  DiffOp a = DiffOp::d(2);
  DiffOp b = op_add(DiffOp::d(2), DiffOp::identity());
  OpEqualResult r = op_equal(a, b);
  CHECK(r.verdict == Verdict::NonZero);
  CHECK(r.power == 0);
}

TEST_CASE("property: associativity and distributivity") {
  Rng rng(2718);
  for (int i = 0; i < 10; ++i) {
    DiffOp a = random_diffop(rng, 2);
    DiffOp b = random_diffop(rng, 2);
    DiffOp c = random_diffop(rng, 2);
    CHECK(op_equal(op_mul(op_mul(a, b), c), op_mul(a, op_mul(b, c))).equal());
    CHECK(op_equal(op_mul(a, op_add(b, c)), op_add(op_mul(a, b), op_mul(a, c))).equal());
    CHECK(op_equal(op_mul(op_add(a, b), c), op_add(op_mul(a, c), op_mul(b, c))).equal());
  }
}

TEST_CASE("property: application is a homomorphism") {
  Rng rng(314);
  for (int i = 0; i < 8; ++i) {
    DiffOp a = random_diffop(rng, 2);
    DiffOp b = random_diffop(rng, 2);
    Expr u = random_expr(rng, 2);
    Expr lhs = op_apply(op_mul(a, b), u);
    Expr rhs = op_apply(a, op_apply(b, u));
    check_zero(simplify(lhs - rhs));
  }
}

TEST_CASE("property: degree law under composition") {
  Rng rng(999);
  for (int i = 0; i < 8; ++i) {
    DiffOp a = random_diffop(rng, 3);
    DiffOp b = random_diffop(rng, 3);
    Expr lead = simplify(a.leading_coeff() * b.leading_coeff());
    if (is_zero(lead).verdict != Verdict::NonZero) continue;
    REQUIRE(a.order().has_value());
    REQUIRE(b.order().has_value());
    CHECK(op_mul(a, b).order() == *a.order() + *b.order());
  }
}

TEST_CASE("json: operators serialize as coefficient strings") {
  DiffOp L = DiffOp::from_coeffs({parsed("-2/(x+1)^2"), constant(0), constant(1)});
  Json j = to_json(L);
  CHECK(j.at("coeffs")[0] == "-2/(x+1)^2");
  DiffOp back = diffop_from_json(j, ParseOptions{}, ZeroTestOptions{});
  CHECK(op_equal(L, back).equal());
}

TEST_CASE("normalization: trailing coefficients that vanish only semantically") {
  // sinh^2 - cosh^2 + 1 is identically zero but not syntactically so.
  Expr sneaky = parsed("sinh(x)^2 - cosh(x)^2 + 1");
  CHECK(sneaky.kind() != Kind::Constant);
  DiffOp op = DiffOp::from_coeffs({variable(), sneaky});
  CHECK(op.order() == 0);
  CHECK(DiffOp::from_coeffs({sneaky}).is_zero_op());
}
