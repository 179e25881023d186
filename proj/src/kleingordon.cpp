#include "forge/kleingordon.hpp"

#include <algorithm>

#include "forge/error.hpp"
#include "forge/parse.hpp"

namespace forge {

namespace {

Expr log_second_derivative(const Expr& h) { return differentiate(apply(Builtin::Ln, h), 2); }

ZeroResult check_h_equation(const Expr& V, const Expr& h, const Rational& lambda,
                            const ZeroTestOptions& opts) {
  Expr residual = simplify(differentiate(h, 2) + (V + constant(lambda)) * h);
  return is_zero(residual, opts);
}

}  // namespace

KGChainNode kg_step(const Expr& V, const Expr& h, const Rational& lambda,
                    std::shared_ptr<const KGChainNode> parent, const ZeroTestOptions& opts) {
  require_nonvanishing(h, opts);
  ZeroResult eig = check_h_equation(V, h, lambda, opts);
  if (eig.verdict != Verdict::Zero)
    raise(ErrorCode::NotAnEigenfunction,
          "h'' + (V + lambda) h does not vanish (witness x = " + std::to_string(eig.witness_point) +
              ", value = " + std::to_string(eig.witness_value) + ")");

  KGChainNode node;
  node.V = V;
  node.h = h;
  node.lambda = lambda;
  node.W = simplify(V + constant(2) * log_second_derivative(h));
  node.s = simplify(-differentiate(h) / h);
  node.parent = parent;
  node.depth = parent ? parent->depth + 1 : 0;

  // The lift must agree with the 1-D intertwining of Dx^2 + V.
  DiffOp L = DiffOp::from_coeffs({V, constant(0), constant(1)}, opts);
  IntertwiningResult lifted = lift_from_eigenfunction(L, h, lambda, opts);
  DiffOp M_expected = DiffOp::from_coeffs({node.W, constant(0), constant(1)}, opts);
  node.cross_check = op_equal(lifted.M, M_expected, opts);
  if (node.cross_check.verdict == Verdict::NonZero)
    raise(ErrorCode::NotAnEigenfunction,
          "lifted operator disagrees with V + 2 (ln h)'' at D^" + std::to_string(node.cross_check.power));
  return node;
}

std::vector<KGChainNode> chain(const Expr& seed_V,
                               const std::vector<std::pair<Expr, Rational>>& steps,
                               const ZeroTestOptions& opts) {
  std::vector<KGChainNode> nodes;
  Expr V = seed_V;
  std::shared_ptr<const KGChainNode> parent;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      KGChainNode node = kg_step(V, steps[i].first, steps[i].second, parent, opts);
      nodes.push_back(node);
      parent = std::make_shared<KGChainNode>(node);
      V = node.W;
    } catch (const Error& err) {
      raise(err.code(), "chain step " + std::to_string(i) + ": " + err.what());
    }
  }
  return nodes;
}

// -- SolutionField ---------------------------------------------------------------

SolutionField::SolutionField(std::vector<SolutionTerm> terms, Expr profile_X, Expr profile_Y)
    : terms_(std::move(terms)), profile_X_(std::move(profile_X)), profile_Y_(std::move(profile_Y)) {}

SolutionField SolutionField::d_alembert(Expr profile_X, Expr profile_Y) {
  std::vector<SolutionTerm> terms{{constant(1), ProfileBasis::X, 0},
                                  {constant(1), ProfileBasis::Y, 0}};
  return SolutionField(std::move(terms), std::move(profile_X), std::move(profile_Y));
}

const Expr& SolutionField::profile(ProfileBasis basis) const {
  return basis == ProfileBasis::X ? profile_X_ : profile_Y_;
}

SolutionField SolutionField::dx() const {
  std::vector<SolutionTerm> out;
  out.reserve(terms_.size() * 2);
  for (const SolutionTerm& t : terms_) {
    Expr dc = differentiate(t.coeff);
    if (!dc.is_constant(0)) out.push_back({std::move(dc), t.basis, t.order});
    out.push_back({t.coeff, t.basis, t.order + 1});
  }
  return SolutionField(std::move(out), profile_X_, profile_Y_).collected();
}

SolutionField SolutionField::dt() const {
  std::vector<SolutionTerm> out;
  out.reserve(terms_.size());
  for (const SolutionTerm& t : terms_) {
    Expr c = t.basis == ProfileBasis::X ? t.coeff : simplify(-t.coeff);
    out.push_back({std::move(c), t.basis, t.order + 1});
  }
  return SolutionField(std::move(out), profile_X_, profile_Y_);
}

SolutionField SolutionField::scaled(const Expr& c) const {
  std::vector<SolutionTerm> out;
  out.reserve(terms_.size());
  for (const SolutionTerm& t : terms_) out.push_back({simplify(c * t.coeff), t.basis, t.order});
  return SolutionField(std::move(out), profile_X_, profile_Y_).collected();
}

SolutionField SolutionField::plus(const SolutionField& other) const {
  std::vector<SolutionTerm> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  Expr px = profile_X_.is_constant(0) ? other.profile_X_ : profile_X_;
  Expr py = profile_Y_.is_constant(0) ? other.profile_Y_ : profile_Y_;
  return SolutionField(std::move(out), std::move(px), std::move(py)).collected();
}

SolutionField SolutionField::collected() const {
  std::vector<SolutionTerm> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [](const SolutionTerm& a, const SolutionTerm& b) {
    if (a.basis != b.basis) return a.basis < b.basis;
    return a.order < b.order;
  });
  std::vector<SolutionTerm> out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    std::vector<Expr> coeffs{sorted[i].coeff};
    while (j < sorted.size() && sorted[j].basis == sorted[i].basis && sorted[j].order == sorted[i].order) {
      coeffs.push_back(sorted[j].coeff);
      ++j;
    }
    Expr total = simplify(sum(std::move(coeffs)));
    if (!total.is_constant(0)) out.push_back({std::move(total), sorted[i].basis, sorted[i].order});
    i = j;
  }
  return SolutionField(std::move(out), profile_X_, profile_Y_);
}

double SolutionField::evaluate(double t, double x, unsigned precision) const {
  FieldSampler sampler(*this, precision);
  return sampler(t, x);
}

FieldSampler::FieldSampler(const SolutionField& field, unsigned precision) : precision_(precision) {
  for (const SolutionTerm& t : field.terms()) {
    Expr profile = field.profile(t.basis);
    prepared_.push_back({t.coeff, t.basis, simplify(differentiate(profile, t.order))});
  }
}

double FieldSampler::operator()(double t, double x) const {
  PrecisionScope scope(precision_);
  EvalContext coeff_ctx;
  coeff_ctx.precision = precision_;
  coeff_ctx.x = x;
  EvalContext arg_ctx;
  arg_ctx.precision = precision_;
  Real total(0);
  for (const Prepared& p : prepared_) {
    arg_ctx.x = p.basis == ProfileBasis::X ? t + x : x - t;
    total += evaluate(p.coeff, coeff_ctx) * forge::evaluate(p.profile_derivative, arg_ctx);
  }
  return to_double(total);
}

SolutionField transform_solution(const KGChainNode& node, const SolutionField& u) {
  return u.dx().plus(u.scaled(node.s));
}

std::vector<GroupedCoefficient> kg_residual_expr(const KGChainNode& node, const SolutionField& v) {
  SolutionField residual =
      v.dt().dt().plus(v.dx().dx().scaled(constant(-1))).plus(v.scaled(simplify(-node.W)));
  SolutionField collected = residual.collected();
  std::vector<GroupedCoefficient> out;
  for (const SolutionTerm& t : collected.terms()) out.push_back({t.basis, t.order, t.coeff});
  return out;
}

// -- catalog -----------------------------------------------------------------------

CatalogEntry hyperbolic_entry(const Rational& c0, const Rational& c1, const Rational& k) {
  ParseOptions po;
  po.constants["c0"] = c0;
  po.constants["c1"] = c1;
  po.constants["k"] = k;
  CatalogEntry e;
  e.name = "hyperbolic";
  e.V = constant(0);
  e.h = parse_expr("c0*sinh(k*x) + c1*cosh(k*x)", po);
  e.lambda = -k * k;
  e.expected_W = parse_expr("2*k^2*(c1^2 - c0^2)/(c0*sinh(k*x) + c1*cosh(k*x))^2", po);
  e.transform_coeff = parse_expr("-k*(c0*cosh(k*x) + c1*sinh(k*x))/(c0*sinh(k*x) + c1*cosh(k*x))", po);
  e.domain_lo = 1.0;
  e.domain_hi = 2.0;
  return e;
}

CatalogEntry trigonometric_entry(const Rational& c0, const Rational& c1, const Rational& k) {
  CatalogEntry hyp = hyperbolic_entry(c0, c1, k);
  std::map<Builtin, Builtin> swap{{Builtin::Sinh, Builtin::Sin}, {Builtin::Cosh, Builtin::Cos}};
  CatalogEntry e;
  e.name = "trigonometric";
  e.V = constant(0);
  e.h = simplify(substitute_builtin(hyp.h, swap));
  e.lambda = k * k;  // lambda = -k^2 -> +k^2
  // k^2 -> -k^2 flips the sign of the constant prefactor of W.
  e.expected_W = simplify(constant(-1) * substitute_builtin(*hyp.expected_W, swap));
  e.transform_coeff = std::nullopt;
  e.domain_lo = 0.3;
  e.domain_hi = 1.2;
  return e;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;

  {
    ParseOptions po;
    po.constants["b"] = Rational(1);
    CatalogEntry e;
    e.name = "v2";
    e.V = constant(0);
    e.h = parse_expr("x + b", po);
    e.lambda = Rational(0);
    e.expected_W = parse_expr("-2/(x+b)^2", po);
    e.transform_coeff = parse_expr("-1/(x+b)", po);
    out.push_back(std::move(e));
  }

  out.push_back(hyperbolic_entry(Rational(0), Rational(1), Rational(1)));
  out.push_back(trigonometric_entry(Rational(0), Rational(1), Rational(1)));

  {
    ParseOptions po;
    po.constants["b"] = Rational(1);
    po.constants["c1"] = Rational(1);
    po.constants["c2"] = Rational(1);
    CatalogEntry e;
    e.name = "H-lambda0";
    e.V = parse_expr("-2/(x+b)^2", po);
    e.h = parse_expr("c1*(x+b)^2 + c2/(x+b)", po);
    e.lambda = Rational(0);
    // Derived closed form of V + 2 (ln h)'' for this h.
    e.expected_W = parse_expr("6*(x+b)*(2 - (x+b)^3)/((x+b)^3 + 1)^2", po);
    out.push_back(std::move(e));
  }

  {
    ParseOptions po;
    po.constants["b"] = Rational(1);
    po.constants["m"] = Rational(1);
    po.constants["c1"] = Rational(1);
    po.constants["c2"] = Rational(1);
    CatalogEntry e;
    e.name = "H-lambda-neg";
    e.V = parse_expr("-2/(x+b)^2", po);
    e.h = parse_expr("c1*exp(m*x)*(m^2 - m/(x+b)) + c2*exp(-m*x)*(m^2 + m/(x+b))", po);
    e.lambda = Rational(-1);  // lambda = -m^2
    out.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.name = "sinh2-A2";
    e.V = parse_expr("-2/sinh(x)^2");
    // A = 2 solution of h'' - (2/sinh(x)^2 + A^2) h = 0 with c1 = c2 = 1.
    e.h = parse_expr("(cosh(2*x) - 1) + sinh(2*x)*(cosh(2*x) - 2)/(cosh(2*x) - 1)");
    e.lambda = Rational(-4);  // lambda = -A^2
    e.domain_lo = 0.3;
    e.domain_hi = 1.2;
    out.push_back(std::move(e));
  }

  return out;
}

std::vector<CatalogValidation> validate_catalog(const ZeroTestOptions& base_opts) {
  std::vector<CatalogValidation> out;
  for (const CatalogEntry& entry : catalog()) {
    ZeroTestOptions opts = base_opts.with_domain(entry.domain_lo, entry.domain_hi);
    CatalogValidation v;
    v.name = entry.name;
    ZeroResult eig = check_h_equation(entry.V, entry.h, entry.lambda, opts);
    v.eigen_verdict = eig.verdict;
    if (eig.verdict != Verdict::Zero) {
      v.detail = "h'' + (V + lambda) h is " + std::string(verdict_name(eig.verdict)) +
                 " (witness x = " + std::to_string(eig.witness_point) + ")";
    }
    if (entry.expected_W) {
      Expr engine_W = simplify(entry.V + constant(2) * log_second_derivative(entry.h));
      ZeroResult wz = is_zero(simplify(engine_W - *entry.expected_W), opts);
      v.w_verdict = wz.verdict;
      if (wz.verdict != Verdict::Zero) {
        if (!v.detail.empty()) v.detail += "; ";
        v.detail += "cataloged W differs from V + 2 (ln h)'': engine form " + print_expr(engine_W);
      }
    }
    v.flagged = v.eigen_verdict != Verdict::Zero ||
                (v.w_verdict.has_value() && *v.w_verdict != Verdict::Zero);
    out.push_back(std::move(v));
  }
  return out;
}

// -- separation of variables --------------------------------------------------------

Expr weber_solution(int n) {
  if (n < 0) raise(ErrorCode::QuantizationMismatch, "weber index must be nonnegative");
  if (n > 12) raise(ErrorCode::LimitExceeded, "weber index " + std::to_string(n) + " exceeds the cap of 12");

  // d^n/dx^n e^{-x^2/2} = p_n(x) e^{-x^2/2}: p_0 = 1, p_{k+1} = p_k' - x p_k.
  Polynomial p;
  p.coeffs = {Rational(1)};
  for (int k = 0; k < n; ++k) {
    Polynomial next;
    next.coeffs.assign(p.coeffs.size() + 1, Rational(0));
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
      next.coeffs[i - 1] += p.coeffs[i] * Rational(static_cast<long long>(i));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) next.coeffs[i + 1] -= p.coeffs[i];
    p = std::move(next);
  }

  std::vector<Expr> monomials;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (p.coeffs[i] == 0) continue;
    monomials.push_back(product({constant(p.coeffs[i]), power(variable(), Rational(static_cast<long long>(i)))}));
  }
  Expr poly = sum(std::move(monomials));
  Expr gaussian = apply(Builtin::Exp, product({constant(Rational(-1, 4)), power(variable(), 2)}));
  Expr sign = constant(n % 2 == 0 ? 1 : -1);
  return simplify(product({sign, poly, gaussian}));
}

SeparatedSolution separated_solution(const Rational& k, const Rational& lambda) {
  Rational q = k - lambda - Rational(1, 2);
  if (!is_integer(q) || q < 0)
    raise(ErrorCode::QuantizationMismatch,
          "k - lambda = " + rational_to_string(k - lambda) + " is not n + 1/2 for a nonnegative integer n");
  int n = static_cast<int>(to_long(q));

  SeparatedSolution sol;
  sol.k = k;
  sol.lambda = lambda;
  sol.n = n;
  sol.X_part = weber_solution(n);

  Expr t = variable("t");
  if (lambda == 0) {
    sol.T_part = constant(1) + t;  // span {1, t}
  } else if (lambda > 0) {
    sol.T_part = apply(Builtin::Cos, power(constant(lambda), Rational(1, 2)) * t);
  } else {
    sol.T_part = apply(Builtin::Cosh, power(constant(-lambda), Rational(1, 2)) * t);
  }
  return sol;
}

}  // namespace forge
