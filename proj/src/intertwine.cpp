#include "forge/intertwine.hpp"

#include <cmath>
#include <string>

#include "forge/error.hpp"

namespace forge {

namespace {

int required_order(const DiffOp& op, const char* what) {
  auto n = op.order();
  if (!n) raise(ErrorCode::UnsupportedOrder, std::string(what) + " needs a nonzero operator");
  return *n;
}

// Derivatives s, s', s'', ... up to order n.
std::vector<Expr> derivative_chain(const Expr& s, int n) {
  std::vector<Expr> out{s};
  for (int i = 0; i < n; ++i) out.push_back(differentiate(out.back()));
  return out;
}

}  // namespace

void require_nonvanishing(const Expr& h, const ZeroTestOptions& opts) {
  // Uninterpreted symbols stand for formal germs assumed nonvanishing at the
  // base point; only concrete expressions get the scan.
  if (!symbol_orders(h).empty()) return;
  const int scan_points = 64;
  EvalContext ctx;
  ctx.precision = opts.precision;
  double prev = 0.0;
  bool have_prev = false;
  for (int i = 0; i < scan_points; ++i) {
    ctx.x = opts.domain_lo + (opts.domain_hi - opts.domain_lo) * i / (scan_points - 1);
    double v;
    try {
      Evaluated ev = evaluate_with_magnitude(h, ctx);
      double mag = to_double(ev.magnitude);
      v = to_double(ev.value);
      if (std::abs(v) <= opts.atol + opts.rtol * (1.0 + mag))
        raise(ErrorCode::ZeroCrossing, "h vanishes near x = " + std::to_string(ctx.x));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Domain) throw;
      continue;  // isolated singularity, not a zero
    }
    if (have_prev && ((prev < 0) != (v < 0)))
      raise(ErrorCode::ZeroCrossing, "h changes sign near x = " + std::to_string(ctx.x));
    prev = v;
    have_prev = true;
  }
}

MatchResult match_coefficients(const DiffOp& L, const Expr& s, const ZeroTestOptions& opts) {
  int n = required_order(L, "match_coefficients");
  if (n < 1) raise(ErrorCode::UnsupportedOrder, "match_coefficients needs order >= 1");

  std::vector<Expr> ds = derivative_chain(s, n);

  // Right side T∘L = (D + s)∘L: coefficient of D^m is a_{m-1} + a_m' + s*a_m.
  auto rhs = [&](int m) {
    std::vector<Expr> terms;
    if (m >= 1) terms.push_back(L.coeff(m - 1));
    terms.push_back(differentiate(L.coeff(m)));
    terms.push_back(product({s, L.coeff(m)}));
    return sum(std::move(terms));
  };

  // Left side M∘T: coefficient of D^m is b_{m-1} + sum_{k>=m} C(k,m) b_k s^(k-m).
  // Solve top-down: b_n = a_n, then peel b_{m-1} for m = n..1.
  std::vector<Expr> b(static_cast<std::size_t>(n) + 1, constant(0));
  b[n] = L.coeff(n);
  for (int m = n; m >= 1; --m) {
    std::vector<Expr> known;
    for (int k = m; k <= n; ++k)
      known.push_back(product({constant(binomial(k, m)), b[k], ds[k - m]}));
    b[m - 1] = simplify(rhs(m) - sum(std::move(known)));
  }

  // Leftover D^0 identity: c0 - (a0' + s*a0) with c0 = sum_k b_k s^(k).
  std::vector<Expr> c0_terms;
  for (int k = 0; k <= n; ++k) c0_terms.push_back(product({b[k], ds[k]}));
  Expr constraint = simplify(sum(std::move(c0_terms)) - rhs(0));

  return MatchResult{DiffOp::from_coeffs(std::move(b), opts), std::move(constraint)};
}

Expr derive_s_ode(const DiffOp& L, const ZeroTestOptions& opts) {
  return match_coefficients(L, symbol("s"), opts).constraint;
}

// `lambda` only names the level set R(s) = lambda; the reduction is lambda-free.
Expr riccati_reduce(const DiffOp& L, const Rational& /*lambda*/, const ZeroTestOptions& /*opts*/) {
  int n = required_order(L, "riccati_reduce");
  if (n != 2 && n != 3)
    raise(ErrorCode::UnsupportedOrder, "riccati_reduce supports orders 2 and 3, got " + std::to_string(n));

  // r_i(s) = h^(i)/h rewritten through s = -h'/h: r_0 = 1, r_{i+1} = r_i' - s*r_i.
  Expr s = symbol("s");
  std::vector<Expr> r{constant(1)};
  for (int i = 0; i < n; ++i) r.push_back(simplify(differentiate(r.back()) - s * r.back()));

  // L(h) + lambda*h = 0  <=>  R(s) = lambda with R = -sum a_i r_i.
  std::vector<Expr> terms;
  for (int i = 0; i <= n; ++i) terms.push_back(product({constant(-1), L.coeff(i), r[i]}));
  return simplify(sum(std::move(terms)));
}

IntertwiningResult lift_from_eigenfunction(const DiffOp& L, const Expr& h, const Rational& lambda,
                                           const ZeroTestOptions& opts) {
  require_nonvanishing(h, opts);
  Expr residual = simplify(op_apply(L, h) + constant(lambda) * h);
  ZeroResult eig = is_zero(residual, opts);
  if (eig.verdict != Verdict::Zero) {
    raise(ErrorCode::NotAnEigenfunction,
          "L(h) + lambda*h = " + print_expr(residual) + " does not vanish (witness x = " +
              std::to_string(eig.witness_point) + ", value = " + std::to_string(eig.witness_value) + ")");
  }

  Expr s = simplify(-differentiate(h) / h);
  MatchResult match = match_coefficients(L, s, opts);
  DiffOp T = op_add(DiffOp::d(), DiffOp::mul_by(s));

  IntertwiningResult result;
  result.L = L;
  result.M = match.M;
  result.T = T;
  result.s = s;
  result.h = h;
  result.lambda = lambda;
  result.residual_certificate = op_equal(op_mul(match.M, T), op_mul(T, L), opts);
  if (result.residual_certificate.verdict == Verdict::NonZero)
    raise(ErrorCode::NotAnEigenfunction,
          "intertwining certificate failed at D^" + std::to_string(result.residual_certificate.power));

  if (L.order() == 2) {
    result.T_conj = conjugate_intertwiner(result, opts);
    result.has_conjugate = true;
    result.conjugate_certificate =
        op_equal(op_mul(L, result.T_conj), op_mul(result.T_conj, result.M), opts);
  }
  return result;
}

std::pair<DiffOp, DiffOp> factorize(const DiffOp& L, const Expr& h, const ZeroTestOptions& opts) {
  int n = required_order(L, "factorize");
  if (n != 2) raise(ErrorCode::UnsupportedOrder, "factorize needs an order-2 operator");
  require_nonvanishing(h, opts);

  Expr residual = simplify(op_apply(L, h));
  ZeroResult ker = is_zero(residual, opts);
  if (ker.verdict != Verdict::Zero)
    raise(ErrorCode::NotAKernelElement,
          "L(h) = " + print_expr(residual) + " does not vanish (witness x = " +
              std::to_string(ker.witness_point) + ")");

  Expr s = simplify(-differentiate(h) / h);
  const Expr F = L.coeff(2);
  const Expr G = L.coeff(1);
  DiffOp L1 = op_add(DiffOp::d(), DiffOp::mul_by(s));
  DiffOp L2 = DiffOp::from_coeffs({simplify(G - s * F), F}, opts);
  return {std::move(L1), std::move(L2)};
}

DiffOp conjugate_intertwiner(const IntertwiningResult& result, const ZeroTestOptions& opts) {
  if (result.L.order() != 2)
    raise(ErrorCode::UnsupportedOrder, "conjugate intertwiner is defined for order-2 operators");
  const Expr F = result.L.coeff(2);
  const Expr G = result.L.coeff(1);
  return DiffOp::from_coeffs({simplify(G - result.s * F), F}, opts);
}

DiffOp gauge_conjugate(const DiffOp& L, const Expr& g, const ZeroTestOptions& opts) {
  require_nonvanishing(g, opts);
  DiffOp left = op_mul(DiffOp::mul_by(quotient(constant(1), g)), L);
  return op_mul(left, DiffOp::mul_by(g));
}

DiffOp right_divide_by_D(const DiffOp& A, const ZeroTestOptions& opts) {
  if (A.is_zero_op()) return DiffOp::zero();
  Expr zeroth = A.coeff(0);
  if (!zeroth.is_constant(0)) {
    ZeroResult z = is_zero(zeroth, opts);
    if (z.verdict != Verdict::Zero)
      raise(ErrorCode::NotDivisible,
            "D^0 coefficient " + print_expr(zeroth) + " does not vanish (witness x = " +
                std::to_string(z.witness_point) + ")");
  }
  std::vector<Expr> shifted(A.coeffs().begin() + 1, A.coeffs().end());
  return DiffOp::from_coeffs(std::move(shifted), opts);
}

Lemma2Result lemma2_transform(const DiffOp& L, const Expr& h, const Rational& lambda,
                              const ZeroTestOptions& opts) {
  int n = required_order(L, "lemma2_transform");
  require_nonvanishing(h, opts);

  // Eigenfunction in the L(h) = lambda*h sense.
  Expr residual = simplify(op_apply(L, h) - constant(lambda) * h);
  ZeroResult eig = is_zero(residual, opts);
  if (eig.verdict != Verdict::Zero)
    raise(ErrorCode::NotAnEigenfunction,
          "L(h) - lambda*h = " + print_expr(residual) + " does not vanish (witness x = " +
              std::to_string(eig.witness_point) + ")");

  // u = h v: N = h^{-1}∘L∘h has D^0 coefficient lambda.
  DiffOp N = gauge_conjugate(L, h, opts);
  ZeroResult z0 = is_zero(simplify(N.coeff(0) - constant(lambda)), opts);
  if (z0.verdict != Verdict::Zero)
    raise(ErrorCode::NotAnEigenfunction,
          "gauge-conjugated operator has D^0 coefficient " + print_expr(N.coeff(0)) +
              " instead of lambda");

  // Differentiate the v-equation and set q = v': D∘N = Q∘D.
  DiffOp Q = right_divide_by_D(op_mul(DiffOp::d(), N), opts);

  // w = q h: conjugate back by h^{-1}.
  DiffOp W = gauge_conjugate(Q, quotient(constant(1), h), opts);
  if (W.order() != n)
    raise(ErrorCode::UnsupportedOrder,
          "transformed operator has order " + std::to_string(W.order().value_or(-1)) +
              ", expected " + std::to_string(n));

  return Lemma2Result{L, h, lambda, std::move(W), std::move(N), std::move(Q)};
}

}  // namespace forge
