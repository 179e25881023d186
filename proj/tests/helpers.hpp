#pragma once

#include <doctest.h>

#include <string>

#include "forge/diffop.hpp"
#include "forge/parse.hpp"
#include "forge/zerotest.hpp"

namespace forge::testing {

inline ZeroTestOptions opts_on(double lo, double hi) { return ZeroTestOptions{}.with_domain(lo, hi); }

inline void check_zero(const Expr& e, const ZeroTestOptions& opts = {}) {
  ZeroResult r = is_zero(e, opts);
  if (r.verdict != Verdict::Zero) {
    FAIL_CHECK("expected Zero for " << print_expr(e) << ", got "
                                    << std::string(verdict_name(r.verdict)) << " at x = "
                                    << r.witness_point << " value " << r.witness_value);
  } else {
    CHECK(r.verdict == Verdict::Zero);
  }
}

inline void check_nonzero(const Expr& e, const ZeroTestOptions& opts = {}) {
  ZeroResult r = is_zero(e, opts);
  CHECK(r.verdict == Verdict::NonZero);
}

/// Structural equality with a readable failure message.
inline void check_same(const Expr& actual, const Expr& expected) {
  if (!structurally_equal(actual, expected)) {
    FAIL_CHECK("expected " << print_expr(expected) << ", got " << print_expr(actual));
  } else {
    CHECK(structurally_equal(actual, expected));
  }
}

inline Expr parsed(const std::string& text) { return parse_expr(text); }

// Random expression trees for property tests. Leaves stay simple so that
// most samples on positive domains evaluate cleanly.
inline Expr random_expr(Rng& rng, int depth) {
  if (depth <= 0) {
    switch (rng.uniform_int(0, 3)) {
      case 0: return constant(rng.uniform_int(-4, 4));
      case 1: return constant(Rational(rng.uniform_int(1, 7), rng.uniform_int(2, 5)));
      case 2: return variable();
      default: return symbol(rng.uniform_int(0, 1) == 0 ? "f" : "g");
    }
  }
  switch (rng.uniform_int(0, 6)) {
    case 0:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 1:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 2:
      return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 3: {
      Expr num = random_expr(rng, depth - 1);
      Expr den = random_expr(rng, depth - 1);
      try {
        return num / den;
      } catch (const Error&) {
        return num / (variable() + constant(5));
      }
    }
    case 4:
      return power(random_expr(rng, depth - 1), Rational(rng.uniform_int(2, 3)));
    case 5: {
      Builtin fns[] = {Builtin::Exp, Builtin::Sin, Builtin::Cos, Builtin::Sinh, Builtin::Cosh,
                       Builtin::Tanh, Builtin::Ln};
      Builtin fn = fns[rng.uniform_int(0, 6)];
      Expr arg = random_expr(rng, depth - 1);
      // Keep ln arguments strictly positive so samples stay in-domain.
      if (fn == Builtin::Ln) arg = arg * arg + constant(1);
      return apply(fn, arg);
    }
    default:
      return symbol(rng.uniform_int(0, 1) == 0 ? "f" : "g", static_cast<int>(rng.uniform_int(0, 2)),
                    variable());
  }
}

// Random operators with polynomial and uninterpreted coefficients; the
// leading coefficient is kept away from zero.
inline DiffOp random_diffop(Rng& rng, int max_order) {
  int n = static_cast<int>(rng.uniform_int(0, max_order));
  std::vector<Expr> coeffs;
  for (int i = 0; i <= n; ++i) {
    switch (rng.uniform_int(0, 3)) {
      case 0:
        coeffs.push_back(constant(rng.uniform_int(-3, 3)));
        break;
      case 1:
        coeffs.push_back(constant(rng.uniform_int(-2, 2)) * variable() +
                         constant(rng.uniform_int(-3, 3)));
        break;
      case 2:
        coeffs.push_back(symbol(rng.uniform_int(0, 1) == 0 ? "f" : "g"));
        break;
      default:
        coeffs.push_back(power(variable(), Rational(rng.uniform_int(1, 2))) +
                         constant(rng.uniform_int(1, 3)));
        break;
    }
  }
  if (coeffs.back().is_constant())
    coeffs.back() = variable() + constant(rng.uniform_int(2, 5));
  return DiffOp::from_coeffs(std::move(coeffs));
}

}  // namespace forge::testing
