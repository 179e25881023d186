#pragma once

#include <map>
#include <string>
#include <vector>

#include "forge/expr.hpp"
#include "forge/numbers.hpp"

namespace forge {

/// Dense univariate polynomial with exact rational coefficients,
/// coeffs[i] * t^i. Used to instantiate uninterpreted symbols.
struct Polynomial {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Polynomial derivative() const;
  Real eval(const Real& t) const;
  std::string to_string() const;
};

/// Numeric evaluation context: the variable value, one concrete polynomial
/// per uninterpreted symbol, and the working precision in decimal digits.
/// Binding polynomials should have degree >= the highest derivative order
/// requested for the symbol (degree >= 4 keeps orders up to 4 nondegenerate).
struct EvalContext {
  double x = 0.0;
  std::map<std::string, Polynomial> bindings;
  unsigned precision = 30;
};

/// Value of e at ctx.x, with relative error bounded by the working precision.
/// Throws Error(Domain) on ln of a nonpositive value, division by zero, or a
/// fractional power of a negative base; Error(UnboundSymbol) when an
/// uninterpreted symbol has no binding.
Real evaluate(const Expr& e, const EvalContext& ctx);

/// Value together with a cancellation scale: `magnitude` tracks the size of
/// the intermediate terms that combined into `value`, so |value| can be
/// compared against atol + rtol * magnitude.
struct Evaluated {
  Real value;
  Real magnitude;
};

Evaluated evaluate_with_magnitude(const Expr& e, const EvalContext& ctx);

}  // namespace forge
