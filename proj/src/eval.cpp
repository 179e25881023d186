#include "forge/eval.hpp"

#include "forge/error.hpp"

namespace forge {

Polynomial Polynomial::derivative() const {
  Polynomial d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * Rational(static_cast<long long>(i)));
  return d;
}

Real Polynomial::eval(const Real& t) const {
  Real acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + Real(*it);
  return acc;
}

std::string Polynomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rational_to_string(coeffs[i]);
    if (i >= 1) out += "*t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

namespace {

struct Evaluator {
  const EvalContext& ctx;

  Evaluated eval(const Expr& e) {
    switch (e.kind()) {
      case Kind::Constant: {
        Real v(e.constant_value());
        return {v, abs(v)};
      }
      case Kind::Variable: {
        Real v(ctx.x);
        return {v, abs(v)};
      }
      case Kind::Sum: {
        Real v(0), m(0);
        for (const Expr& t : e.operands()) {
          Evaluated et = eval(t);
          v += et.value;
          m += et.magnitude;
        }
        return {v, m};
      }
      case Kind::Product: {
        Real v(1), m(1);
        for (const Expr& f : e.operands()) {
          Evaluated ef = eval(f);
          v *= ef.value;
          m *= ef.magnitude;
        }
        return {v, m};
      }
      case Kind::Power: {
        Evaluated b = eval(e.base());
        const Rational& r = e.exponent();
        Real v = pow_value(b.value, r);
        Real m = b.magnitude == 0 ? Real(0) : Real(pow(b.magnitude, Real(r)));
        return {v, max(abs(v), m)};
      }
      case Kind::Quotient: {
        Evaluated n = eval(e.numerator());
        Evaluated d = eval(e.denominator());
        if (d.value == 0) raise(ErrorCode::Domain, "division by zero during evaluation");
        return {n.value / d.value, n.magnitude / abs(d.value)};
      }
      case Kind::FunctionApp: {
        Evaluated a = eval(e.argument());
        return builtin_value(e.builtin(), a);
      }
      case Kind::UninterpretedApp: {
        auto it = ctx.bindings.find(e.name());
        if (it == ctx.bindings.end())
          raise(ErrorCode::UnboundSymbol, "no binding for symbol '" + e.name() + "'");
        Evaluated a = eval(e.argument());
        Polynomial p = it->second;
        for (int k = 0; k < e.derivative_order(); ++k) p = p.derivative();
        Real v = p.eval(a.value);
        Real lip = abs(p.derivative().eval(a.value));
        return {v, abs(v) + a.magnitude * lip};
      }
    }
    raise(ErrorCode::Domain, "unreachable expression kind");
  }

  static Real pow_value(const Real& base, const Rational& r) {
    if (base == 0) {
      if (r > 0) return Real(0);
      raise(ErrorCode::Domain, "zero raised to a nonpositive power");
    }
    if (is_integer(r)) {
      long long n = to_long(r);
      Real acc = pow(abs(base), Real(Rational(n < 0 ? -n : n)));
      if (n < 0) acc = 1 / acc;
      if (base < 0 && (n % 2 != 0)) acc = -acc;
      return acc;
    }
    if (base < 0) raise(ErrorCode::Domain, "fractional power of a negative base");
    return pow(base, Real(r));
  }

  static Evaluated builtin_value(Builtin fn, const Evaluated& a) {
    switch (fn) {
      case Builtin::Exp: {
        Real v = exp(a.value);
        return {v, abs(v) * (1 + a.magnitude)};
      }
      case Builtin::Ln: {
        if (a.value <= 0) raise(ErrorCode::Domain, "ln of a nonpositive value");
        Real v = log(a.value);
        return {v, abs(v) + a.magnitude / a.value};
      }
      case Builtin::Sin: {
        Real v = sin(a.value);
        return {v, abs(v) + a.magnitude};
      }
      case Builtin::Cos: {
        Real v = cos(a.value);
        return {v, abs(v) + a.magnitude};
      }
      case Builtin::Sinh: {
        Real v = sinh(a.value);
        return {v, abs(v) + a.magnitude * cosh(a.value)};
      }
      case Builtin::Cosh: {
        Real v = cosh(a.value);
        return {v, abs(v) + a.magnitude * abs(sinh(a.value))};
      }
      case Builtin::Tanh: {
        Real v = tanh(a.value);
        return {v, abs(v) + a.magnitude};
      }
    }
    raise(ErrorCode::Domain, "unreachable builtin");
  }
};

}  // namespace

Evaluated evaluate_with_magnitude(const Expr& e, const EvalContext& ctx) {
  PrecisionScope scope(ctx.precision);
  Evaluator ev{ctx};
  return ev.eval(e);
}

Real evaluate(const Expr& e, const EvalContext& ctx) {
  return evaluate_with_magnitude(e, ctx).value;
}

}  // namespace forge
