#pragma once

#include <optional>
#include <vector>

#include "forge/expr.hpp"
#include "forge/parse.hpp"
#include "forge/zerotest.hpp"

namespace forge {

/// Element of the ring of linear differential operators in one derivation:
/// coeffs()[i] multiplies D^i. Composition follows D f = f' + f D, so
/// D^k f = sum_j C(k,j) f^(j) D^(k-j).
///
/// Normalization trims trailing coefficients that are zero (syntactically, or
/// by the probabilistic zero test when syntax is inconclusive). The zero
/// operator has an empty coefficient sequence and no order.
class DiffOp {
 public:
  DiffOp() = default;

  static DiffOp zero();
  static DiffOp identity();
  /// D^k.
  static DiffOp d(int k = 1);
  /// Multiplication operator u -> f*u.
  static DiffOp mul_by(Expr f);
  static DiffOp from_coeffs(std::vector<Expr> coeffs, const ZeroTestOptions& opts = {});

  bool is_zero_op() const { return coeffs_.empty(); }
  std::optional<int> order() const;
  const std::vector<Expr>& coeffs() const { return coeffs_; }
  /// Coefficient of D^i (constant 0 beyond the stored range).
  Expr coeff(std::size_t i) const;
  Expr leading_coeff() const;

 private:
  explicit DiffOp(std::vector<Expr> coeffs) : coeffs_(std::move(coeffs)) {}
  std::vector<Expr> coeffs_;

  friend DiffOp op_add(const DiffOp&, const DiffOp&);
  friend DiffOp op_sub(const DiffOp&, const DiffOp&);
  friend DiffOp op_neg(const DiffOp&);
  friend DiffOp op_mul(const DiffOp&, const DiffOp&);
  friend DiffOp op_scale(const Expr&, const DiffOp&);
};

DiffOp op_add(const DiffOp& a, const DiffOp& b);
DiffOp op_sub(const DiffOp& a, const DiffOp& b);
DiffOp op_neg(const DiffOp& a);
/// Composition a ∘ b.
DiffOp op_mul(const DiffOp& a, const DiffOp& b);
/// f * a (coefficient-wise left scaling; equals mul_by(f) ∘ a).
DiffOp op_scale(const Expr& f, const DiffOp& a);
/// a(u) = sum coeffs[i] * u^(i).
Expr op_apply(const DiffOp& a, const Expr& u);

struct OpEqualResult {
  Verdict verdict = Verdict::Inconclusive;
  int power = -1;  // offending power of D for NonZero
  double witness_point = 0.0;
  double witness_value = 0.0;

  bool equal() const { return verdict == Verdict::Zero; }
};

/// Coefficient-wise zero test of a - b; NonZero reports the offending power.
OpEqualResult op_equal(const DiffOp& a, const DiffOp& b, const ZeroTestOptions& opts = {});

std::string to_string(const DiffOp& op);

}  // namespace forge
