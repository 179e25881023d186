#include "forge/diffop.hpp"

namespace forge {

DiffOp DiffOp::zero() { return DiffOp(); }

DiffOp DiffOp::identity() { return DiffOp({constant(1)}); }

DiffOp DiffOp::d(int k) {
  std::vector<Expr> coeffs(static_cast<std::size_t>(k) + 1, constant(0));
  coeffs.back() = constant(1);
  return DiffOp(std::move(coeffs));
}

DiffOp DiffOp::mul_by(Expr f) {
  if (f.is_constant(0)) return zero();
  return DiffOp({std::move(f)});
}

DiffOp DiffOp::from_coeffs(std::vector<Expr> coeffs, const ZeroTestOptions& opts) {
  for (Expr& c : coeffs) c = simplify(c);
  while (!coeffs.empty()) {
    const Expr& top = coeffs.back();
    if (top.is_constant(0)) {
      coeffs.pop_back();
      continue;
    }
    ZeroResult z = is_zero(top, opts);
    if (z.verdict == Verdict::Zero) {
      coeffs.pop_back();
      continue;
    }
    break;
  }
  return DiffOp(std::move(coeffs));
}

std::optional<int> DiffOp::order() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

Expr DiffOp::coeff(std::size_t i) const {
  if (i >= coeffs_.size()) return constant(0);
  return coeffs_[i];
}

Expr DiffOp::leading_coeff() const { return coeffs_.empty() ? constant(0) : coeffs_.back(); }

namespace {

// Accumulates coefficient contributions per power of D, summing once at the end.
struct Accumulator {
  std::vector<std::vector<Expr>> buckets;

  void add(std::size_t power, Expr term) {
    if (buckets.size() <= power) buckets.resize(power + 1);
    buckets[power].push_back(std::move(term));
  }

  std::vector<Expr> finish() {
    std::vector<Expr> coeffs(buckets.size(), constant(0));
    for (std::size_t i = 0; i < buckets.size(); ++i)
      if (!buckets[i].empty()) coeffs[i] = sum(std::move(buckets[i]));
    return coeffs;
  }
};

}  // namespace

DiffOp op_add(const DiffOp& a, const DiffOp& b) {
  std::vector<Expr> coeffs(std::max(a.coeffs_.size(), b.coeffs_.size()), constant(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = a.coeff(i) + b.coeff(i);
  return DiffOp::from_coeffs(std::move(coeffs));
}

DiffOp op_neg(const DiffOp& a) {
  std::vector<Expr> coeffs = a.coeffs_;
  for (Expr& c : coeffs) c = -c;
  return DiffOp(std::move(coeffs));
}

DiffOp op_sub(const DiffOp& a, const DiffOp& b) { return op_add(a, op_neg(b)); }

DiffOp op_mul(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero_op() || b.is_zero_op()) return DiffOp::zero();
  Accumulator acc;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_constant(0)) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_constant(0)) continue;
      // a_i D^i ∘ b_j D^j = a_i * sum_l C(i,l) b_j^(l) D^(i-l+j)
      Expr bj = b.coeffs_[j];
      for (std::size_t l = 0; l <= i; ++l) {
        Rational binom = binomial(static_cast<int>(i), static_cast<int>(l));
        acc.add(i - l + j, product({constant(binom), a.coeffs_[i], bj}));
        if (l < i) bj = differentiate(bj);
      }
    }
  }
  return DiffOp::from_coeffs(acc.finish());
}

DiffOp op_scale(const Expr& f, const DiffOp& a) {
  std::vector<Expr> coeffs = a.coeffs_;
  for (Expr& c : coeffs) c = simplify(product({f, c}));
  return DiffOp::from_coeffs(std::move(coeffs));
}

Expr op_apply(const DiffOp& a, const Expr& u) {
  std::vector<Expr> terms;
  Expr du = u;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (!a.coeffs()[i].is_constant(0)) terms.push_back(product({a.coeffs()[i], du}));
    if (i + 1 < a.coeffs().size()) du = differentiate(du);
  }
  return simplify(sum(std::move(terms)));
}

OpEqualResult op_equal(const DiffOp& a, const DiffOp& b, const ZeroTestOptions& opts) {
  DiffOp diff = op_sub(a, b);
  OpEqualResult result;
  bool inconclusive = false;
  for (std::size_t i = 0; i < diff.coeffs().size(); ++i) {
    ZeroResult z = is_zero(diff.coeffs()[i], opts);
    if (z.verdict == Verdict::NonZero) {
      result.verdict = Verdict::NonZero;
      result.power = static_cast<int>(i);
      result.witness_point = z.witness_point;
      result.witness_value = z.witness_value;
      return result;
    }
    if (z.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  result.verdict = inconclusive ? Verdict::Inconclusive : Verdict::Zero;
  return result;
}

std::string to_string(const DiffOp& op) {
  if (op.is_zero_op()) return "0";
  std::string out;
  for (std::size_t i = op.coeffs().size(); i-- > 0;) {
    const Expr& c = op.coeffs()[i];
    if (c.is_constant(0)) continue;
    if (!out.empty()) out += " + ";
    std::string coeff = print_expr(c);
    if (i == 0) {
      out += coeff;
      continue;
    }
    std::string dpart = i == 1 ? "D" : "D^" + std::to_string(i);
    if (c.is_constant(1)) {
      out += dpart;
    } else {
      out += "(" + coeff + ")*" + dpart;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace forge
