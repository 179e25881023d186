#pragma once

#include <utility>

#include "forge/diffop.hpp"

namespace forge {

/// A first-order intertwining T = D + s between L and M, i.e. M∘T = T∘L,
/// together with the certificates computed on acceptance. The eigenfunction
/// route uses s = -h'/h where h satisfies L(h) + lambda*h = 0, so for
/// L = a2*D^2 + a1*D + a0 the first integral a2(s' - s^2) + a1 s - a0 takes
/// the value lambda.
struct IntertwiningResult {
  DiffOp L;
  DiffOp M;
  DiffOp T;
  DiffOp T_conj;  // order-2 case only; empty otherwise
  Expr s;
  Expr h;
  Rational lambda;
  OpEqualResult residual_certificate;   // M∘T vs T∘L
  OpEqualResult conjugate_certificate;  // L∘T_conj vs T_conj∘M (order 2)
  bool has_conjugate = false;
};

struct MatchResult {
  DiffOp M;
  /// Leftover D^0 identity c0 - (a0' + s*a0); zero iff (M, T) intertwine.
  Expr constraint;
};

/// Solves M∘T = T∘L for M of order n = order(L) with T = D + s by equating
/// coefficients of D^(n+1)..D^1 top-down. Coefficients are derived
/// algorithmically, never from closed-form tables.
MatchResult match_coefficients(const DiffOp& L, const Expr& s, const ZeroTestOptions& opts = {});

/// The n-th order ODE that s must satisfy, i.e. the match_coefficients
/// constraint with s left uninterpreted.
Expr derive_s_ode(const DiffOp& L, const ZeroTestOptions& opts = {});

/// First integral R(s) of the s-ODE for n in {2, 3}: R(s) = lambda holds on
/// solutions. Built by rewriting h^(i)/h in terms of s = -h'/h through the
/// recurrence r_0 = 1, r_{i+1} = r_i' - s*r_i, then R = -sum a_i r_i; the
/// defining contract is h*R(-h'/h) + L(h) = 0 identically.
Expr riccati_reduce(const DiffOp& L, const Rational& lambda, const ZeroTestOptions& opts = {});

/// Builds the intertwining from an eigenfunction: requires
/// L(h) + lambda*h = 0 on the working domain and h nonvanishing there; then
/// s = -h'/h, T = D + s, and M comes from match_coefficients. For order-2 L
/// the conjugate intertwiner is attached and certified.
IntertwiningResult lift_from_eigenfunction(const DiffOp& L, const Expr& h, const Rational& lambda,
                                           const ZeroTestOptions& opts = {});

/// L = L2∘L1 with L1 = D + s, L2 = F*D + (G - s*F), from a kernel element h
/// (F h'' + G h' + H h = 0, h nonvanishing).
std::pair<DiffOp, DiffOp> factorize(const DiffOp& L, const Expr& h, const ZeroTestOptions& opts = {});

/// T^c = F*D + (G - s*F) for an order-2 result; certifies L∘T^c = T^c∘M and
/// the composite identities T^c∘T = L + lambda, T∘T^c = M + lambda.
DiffOp conjugate_intertwiner(const IntertwiningResult& result, const ZeroTestOptions& opts = {});

/// g^{-1} ∘ L ∘ g (the substitution u = g v).
DiffOp gauge_conjugate(const DiffOp& L, const Expr& g, const ZeroTestOptions& opts = {});

/// Right division by D: returns Q with Q∘D = A. Requires the D^0 coefficient
/// of A to pass the zero test.
DiffOp right_divide_by_D(const DiffOp& A, const ZeroTestOptions& opts = {});

/// Darboux-type transform data for w = u' - (h'/h) u. Here h is an
/// eigenfunction in the sense L(h) = lambda*h. gauge_N = h^{-1}∘L∘h has
/// D^0 coefficient lambda; q_op annihilates q = v' = (u/h)'; W_op = h∘q_op∘h^{-1}
/// has order(L) and annihilates w for every u in the kernel of L.
struct Lemma2Result {
  DiffOp L;
  Expr h;
  Rational lambda;
  DiffOp W_op;
  DiffOp gauge_N;
  DiffOp q_op;
};

Lemma2Result lemma2_transform(const DiffOp& L, const Expr& h, const Rational& lambda,
                              const ZeroTestOptions& opts = {});

/// Scans the working domain for zeros of h (value or sign change); throws
/// Error(ZeroCrossing) if one is found. Points where h is singular are skipped.
void require_nonvanishing(const Expr& h, const ZeroTestOptions& opts = {});

}  // namespace forge
