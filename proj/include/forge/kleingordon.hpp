#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/diffop.hpp"
#include "forge/intertwine.hpp"

namespace forge {

/// One Darboux step for the Klein-Gordon operator Dt^2 - Dx^2 - V(x):
/// from an eigenfunction h with h'' + (V + lambda) h = 0 the potential moves
/// to W = V + 2 (ln h)'' and solutions map through v = dx(u) + s*u, s = -h'/h.
struct KGChainNode {
  Expr V;
  Expr h;
  Rational lambda;
  Expr W;
  Expr s;
  std::shared_ptr<const KGChainNode> parent;
  int depth = 0;
  /// Certifies that the lifted 1-D operator M equals Dx^2 + W.
  OpEqualResult cross_check;
};

KGChainNode kg_step(const Expr& V, const Expr& h, const Rational& lambda,
                    std::shared_ptr<const KGChainNode> parent = nullptr,
                    const ZeroTestOptions& opts = {});

/// Folds kg_step over (h, lambda) pairs; a failing step aborts with its index.
std::vector<KGChainNode> chain(const Expr& seed_V,
                               const std::vector<std::pair<Expr, Rational>>& steps,
                               const ZeroTestOptions& opts = {});

enum class ProfileBasis { X, Y };

/// One term coeff(x) * P^(order)(arg), where P is the X profile on arg = t+x
/// or the Y profile on arg = x-t.
struct SolutionTerm {
  Expr coeff;
  ProfileBasis basis;
  int order = 0;
};

/// Exact structural two-variable solution: a finite sum of x-coefficients
/// times derivatives of characteristic profiles X(t+x) and Y(x-t).
/// dt/dx act exactly term by term; evaluation substitutes the profiles.
class SolutionField {
 public:
  SolutionField() = default;
  SolutionField(std::vector<SolutionTerm> terms, Expr profile_X, Expr profile_Y);

  /// u0 = X(t+x) + Y(x-t); the profiles are expressions in x used as the
  /// function of one argument.
  static SolutionField d_alembert(Expr profile_X, Expr profile_Y);

  const std::vector<SolutionTerm>& terms() const { return terms_; }
  const Expr& profile(ProfileBasis basis) const;
  bool empty() const { return terms_.empty(); }

  SolutionField dx() const;
  SolutionField dt() const;
  SolutionField scaled(const Expr& c) const;
  SolutionField plus(const SolutionField& other) const;
  /// Groups terms by (basis, order), sums coefficients, drops zeros.
  SolutionField collected() const;

  double evaluate(double t, double x, unsigned precision = 30) const;

 private:
  std::vector<SolutionTerm> terms_;
  Expr profile_X_ = constant(0);
  Expr profile_Y_ = constant(0);
};

/// Grid-friendly evaluator with precomputed profile derivatives.
class FieldSampler {
 public:
  FieldSampler(const SolutionField& field, unsigned precision = 30);
  double operator()(double t, double x) const;

 private:
  struct Prepared {
    Expr coeff;
    ProfileBasis basis;
    Expr profile_derivative;
  };
  std::vector<Prepared> prepared_;
  unsigned precision_;
};

/// v = dx(u) + s*u for the node's s.
SolutionField transform_solution(const KGChainNode& node, const SolutionField& u);

struct GroupedCoefficient {
  ProfileBasis basis;
  int order = 0;
  Expr coeff;
};

/// Coefficients of v_tt - v_xx - W*v grouped by (basis, order); all pass the
/// zero test exactly when v solves the transformed equation structurally.
std::vector<GroupedCoefficient> kg_residual_expr(const KGChainNode& node, const SolutionField& v);

// -- catalog -------------------------------------------------------------------

struct CatalogEntry {
  std::string name;
  Expr V;
  Expr h;
  Rational lambda;
  std::optional<Expr> expected_W;
  /// Published multiplier of u0 in v = dx(u0) + coeff*u0, when one is given.
  std::optional<Expr> transform_coeff;
  double domain_lo = 1.0;
  double domain_hi = 2.0;
};

/// The fixed example catalog. Every entry is validated by validate_catalog;
/// failing entries are flagged, never dropped.
std::vector<CatalogEntry> catalog();

CatalogEntry hyperbolic_entry(const Rational& c0, const Rational& c1, const Rational& k);
/// Generated from hyperbolic_entry by sinh->sin, cosh->cos and k^2 -> -k^2,
/// then revalidated.
CatalogEntry trigonometric_entry(const Rational& c0, const Rational& c1, const Rational& k);

struct CatalogValidation {
  std::string name;
  Verdict eigen_verdict = Verdict::Inconclusive;     // h'' + (V + lambda) h = 0
  std::optional<Verdict> w_verdict;                  // engine W vs expected_W
  bool flagged = false;
  std::string detail;
};

std::vector<CatalogValidation> validate_catalog(const ZeroTestOptions& base_opts = {});

// -- separation of variables -----------------------------------------------------

/// X_n = (-1)^n e^{x^2/4} d^n/dx^n e^{-x^2/2}, reduced to polynomial times
/// e^{-x^2/4}; satisfies X'' + (n + 1/2 - x^2/4) X = 0. n <= 12.
Expr weber_solution(int n);

struct SeparatedSolution {
  Rational k;
  Rational lambda;
  int n = 0;
  Expr X_part;  // in x
  Expr T_part;  // in t, satisfies T'' + lambda T = 0
};

/// Requires k - lambda = n + 1/2 for a nonnegative integer n.
SeparatedSolution separated_solution(const Rational& k, const Rational& lambda);

}  // namespace forge
