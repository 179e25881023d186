#include "forge/expr.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "forge/error.hpp"

namespace forge {

struct Expr::Node {
  Kind kind;
  Rational value;  // Constant value, or Power exponent
  std::string name;
  int order = 0;
  Builtin fn = Builtin::Exp;
  std::vector<Expr> kids;
};

namespace {

using Node = Expr::Node;

Expr make(Kind kind, Rational value, std::string name, int order, Builtin fn, std::vector<Expr> kids) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = std::move(value);
  n->name = std::move(name);
  n->order = order;
  n->fn = fn;
  n->kids = std::move(kids);
  return Expr(std::move(n));
}

Expr raw_power(Expr base, Rational exponent) {
  return make(Kind::Power, std::move(exponent), "", 0, Builtin::Exp, {std::move(base)});
}

Expr raw_quotient(Expr num, Expr den) {
  return make(Kind::Quotient, Rational(0), "", 0, Builtin::Exp, {std::move(num), std::move(den)});
}

int rank(Kind k) {
  switch (k) {
    case Kind::Constant: return 0;
    case Kind::Variable: return 1;
    case Kind::UninterpretedApp: return 2;
    case Kind::FunctionApp: return 3;
    case Kind::Power: return 4;
    case Kind::Product: return 5;
    case Kind::Quotient: return 6;
    case Kind::Sum: return 7;
  }
  return 8;
}

int cmp_rational(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

// (base, exponent) view of a single product factor.
struct Factor {
  Expr base;
  Rational exponent;
};

// Decomposes a (normalized, non-quotient) expression into rational content
// times a list of power factors.
struct FactorList {
  Rational content{1};
  std::vector<Factor> factors;
};

FactorList factor_list(const Expr& e) {
  FactorList out;
  auto push = [&out](const Expr& f) {
    if (f.kind() == Kind::Constant) {
      out.content *= f.constant_value();
    } else if (f.kind() == Kind::Power) {
      out.factors.push_back({f.base(), f.exponent()});
    } else {
      out.factors.push_back({f, Rational(1)});
    }
  };
  if (e.kind() == Kind::Product) {
    for (const Expr& f : e.operands()) push(f);
  } else {
    push(e);
  }
  return out;
}

}  // namespace

// -- accessors ----------------------------------------------------------------

Expr::Expr() : Expr(constant(0)) {}
Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_constant() const { return node_->kind == Kind::Constant; }
bool Expr::is_constant(long long v) const {
  return node_->kind == Kind::Constant && node_->value == Rational(v);
}
const Rational& Expr::constant_value() const {
  assert(node_->kind == Kind::Constant);
  return node_->value;
}
std::optional<Rational> Expr::rational_value() const {
  if (node_->kind == Kind::Constant) return node_->value;
  return std::nullopt;
}
const std::string& Expr::name() const { return node_->name; }
int Expr::derivative_order() const { return node_->order; }
Builtin Expr::builtin() const { return node_->fn; }
const Rational& Expr::exponent() const {
  assert(node_->kind == Kind::Power);
  return node_->value;
}
const std::vector<Expr>& Expr::operands() const { return node_->kids; }
const Expr& Expr::base() const { return node_->kids[0]; }
const Expr& Expr::numerator() const { return node_->kids[0]; }
const Expr& Expr::denominator() const { return node_->kids[1]; }
const Expr& Expr::argument() const { return node_->kids[0]; }

std::size_t Expr::tree_size() const {
  std::size_t n = 1;
  for (const Expr& k : node_->kids) n += k.tree_size();
  return n;
}

const char* builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::Exp: return "exp";
    case Builtin::Ln: return "ln";
    case Builtin::Sin: return "sin";
    case Builtin::Cos: return "cos";
    case Builtin::Sinh: return "sinh";
    case Builtin::Cosh: return "cosh";
    case Builtin::Tanh: return "tanh";
  }
  return "?";
}

std::optional<Builtin> builtin_from_name(std::string_view name) {
  if (name == "exp") return Builtin::Exp;
  if (name == "ln") return Builtin::Ln;
  if (name == "sin") return Builtin::Sin;
  if (name == "cos") return Builtin::Cos;
  if (name == "sinh") return Builtin::Sinh;
  if (name == "cosh") return Builtin::Cosh;
  if (name == "tanh") return Builtin::Tanh;
  return std::nullopt;
}

// -- comparison ---------------------------------------------------------------

int compare(const Expr& a, const Expr& b) {
  if (a.node().get() == b.node().get()) return 0;
  int ra = rank(a.kind()), rb = rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Constant:
      return cmp_rational(a.constant_value(), b.constant_value());
    case Kind::Variable:
      return a.name().compare(b.name());
    case Kind::UninterpretedApp: {
      if (int c = a.name().compare(b.name())) return c;
      if (a.derivative_order() != b.derivative_order())
        return a.derivative_order() < b.derivative_order() ? -1 : 1;
      return compare(a.argument(), b.argument());
    }
    case Kind::FunctionApp: {
      if (a.builtin() != b.builtin()) return a.builtin() < b.builtin() ? -1 : 1;
      return compare(a.argument(), b.argument());
    }
    case Kind::Power: {
      if (int c = compare(a.base(), b.base())) return c;
      return cmp_rational(a.exponent(), b.exponent());
    }
    case Kind::Quotient: {
      if (int c = compare(a.numerator(), b.numerator())) return c;
      return compare(a.denominator(), b.denominator());
    }
    case Kind::Sum:
    case Kind::Product: {
      const auto& ka = a.operands();
      const auto& kb = b.operands();
      std::size_t n = std::min(ka.size(), kb.size());
      for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(ka[i], kb[i])) return c;
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// -- constructors -------------------------------------------------------------

Expr constant(Rational value) {
  return make(Kind::Constant, std::move(value), "", 0, Builtin::Exp, {});
}
Expr constant(long long value) { return constant(Rational(value)); }

Expr variable(const std::string& name) {
  return make(Kind::Variable, Rational(0), name, 0, Builtin::Exp, {});
}

Expr symbol(const std::string& name, int order, Expr argument) {
  assert(order >= 0);
  return make(Kind::UninterpretedApp, Rational(0), name, order, Builtin::Exp, {std::move(argument)});
}

Expr symbol(const std::string& name) { return symbol(name, 0, variable()); }

Expr apply(Builtin fn, Expr argument) {
  if (argument.is_constant(0)) {
    switch (fn) {
      case Builtin::Exp: return constant(1);
      case Builtin::Sin: return constant(0);
      case Builtin::Cos: return constant(1);
      case Builtin::Sinh: return constant(0);
      case Builtin::Cosh: return constant(1);
      case Builtin::Tanh: return constant(0);
      case Builtin::Ln: break;  // ln(0): keep symbolic, evaluation reports the domain error
    }
  }
  if (fn == Builtin::Ln && argument.is_constant(1)) return constant(0);
  if (fn == Builtin::Ln && argument.kind() == Kind::FunctionApp && argument.builtin() == Builtin::Exp)
    return argument.argument();
  if (fn == Builtin::Exp && argument.kind() == Kind::FunctionApp && argument.builtin() == Builtin::Ln)
    return argument.argument();
  return make(Kind::FunctionApp, Rational(0), "", 0, fn, {std::move(argument)});
}

Expr power(Expr base, Rational exponent) {
  if (exponent == 0) return constant(1);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    const Rational& c = base.constant_value();
    if (c == 1) return constant(1);
    if (c == 0) {
      if (exponent > 0) return constant(0);
      raise(ErrorCode::Domain, "zero raised to a negative power");
    }
    // Fold small integer exponents only; huge ones stay symbolic.
    if (is_integer(exponent) && abs(numerator(exponent)) <= 1u << 20)
      return constant(pow_rational(c, to_long(exponent)));
  }
  if (exponent < 0) return quotient(constant(1), power(std::move(base), -exponent));
  if (is_integer(exponent)) {
    if (base.kind() == Kind::Power)
      return power(base.base(), base.exponent() * exponent);
    if (base.kind() == Kind::Product) {
      std::vector<Expr> fs;
      fs.reserve(base.operands().size());
      for (const Expr& f : base.operands()) fs.push_back(power(f, exponent));
      return product(std::move(fs));
    }
    if (base.kind() == Kind::Quotient)
      return quotient(power(base.numerator(), exponent), power(base.denominator(), exponent));
  }
  return raw_power(std::move(base), std::move(exponent));
}

Expr product(std::vector<Expr> factors) {
  for (int pass = 0; pass < 8; ++pass) {
    // Flatten nested products.
    std::vector<Expr> flat;
    flat.reserve(factors.size());
    for (Expr& f : factors) {
      if (f.kind() == Kind::Product)
        flat.insert(flat.end(), f.operands().begin(), f.operands().end());
      else
        flat.push_back(std::move(f));
    }

    // Hoist quotients: a * (n/d) * b  ->  (a*n*b) / d.
    bool has_quotient = std::any_of(flat.begin(), flat.end(),
                                    [](const Expr& f) { return f.kind() == Kind::Quotient; });
    if (has_quotient) {
      std::vector<Expr> nums, dens;
      for (Expr& f : flat) {
        if (f.kind() == Kind::Quotient) {
          nums.push_back(f.numerator());
          dens.push_back(f.denominator());
        } else {
          nums.push_back(std::move(f));
        }
      }
      return quotient(product(std::move(nums)), product(std::move(dens)));
    }

    Rational coeff(1);
    std::vector<Factor> parts;
    for (Expr& f : flat) {
      if (f.is_constant()) {
        coeff *= f.constant_value();
      } else if (f.kind() == Kind::Power) {
        parts.push_back({f.base(), f.exponent()});
      } else {
        parts.push_back({std::move(f), Rational(1)});
      }
    }
    if (coeff == 0) return constant(0);

    // Merge equal bases: x^a * x^b -> x^(a+b).
    std::stable_sort(parts.begin(), parts.end(),
                     [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
    std::vector<Expr> rebuilt;
    std::vector<Expr> exp_args;  // exp(u)*exp(v) -> exp(u+v)
    bool changed = false;
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i + 1;
      Rational total = parts[i].exponent;
      while (j < parts.size() && compare(parts[j].base, parts[i].base) == 0) {
        total += parts[j].exponent;
        ++j;
      }
      if (j > i + 1) changed = true;
      Expr factor = power(parts[i].base, total);
      if (factor.kind() == Kind::FunctionApp && factor.builtin() == Builtin::Exp) {
        exp_args.push_back(factor.argument());
      } else if (factor.is_constant(1)) {
        // canceled completely
      } else if (factor.kind() == Kind::Power || compare(factor, parts[i].base) == 0) {
        rebuilt.push_back(std::move(factor));
      } else {
        // power() rewrote the factor into another shape; normalize again.
        rebuilt.push_back(std::move(factor));
        changed = true;
      }
      i = j;
    }
    if (exp_args.size() > 1) changed = true;
    if (!exp_args.empty()) {
      Expr merged = exp_args.size() == 1 ? apply(Builtin::Exp, exp_args[0])
                                         : apply(Builtin::Exp, sum(std::move(exp_args)));
      rebuilt.push_back(std::move(merged));
    }

    if (changed) {
      rebuilt.push_back(constant(coeff));
      factors = std::move(rebuilt);
      continue;
    }

    std::sort(rebuilt.begin(), rebuilt.end(),
              [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (rebuilt.empty()) return constant(coeff);
    if (coeff == 1 && rebuilt.size() == 1) return rebuilt[0];
    std::vector<Expr> ops;
    if (coeff != 1) ops.push_back(constant(coeff));
    ops.insert(ops.end(), std::make_move_iterator(rebuilt.begin()), std::make_move_iterator(rebuilt.end()));
    if (ops.size() == 1) return ops[0];
    return make(Kind::Product, Rational(0), "", 0, Builtin::Exp, std::move(ops));
  }
  // Normalization did not reach a fixpoint within the pass budget; keep the
  // current factor list as-is (still semantically correct).
  return make(Kind::Product, Rational(0), "", 0, Builtin::Exp, std::move(factors));
}

Expr quotient(Expr num, Expr den) {
  if (den.is_constant()) {
    if (den.constant_value() == 0) raise(ErrorCode::Domain, "division by zero");
    return product({constant(Rational(1) / den.constant_value()), std::move(num)});
  }
  if (num.is_constant(0)) return constant(0);
  if (num.kind() == Kind::Quotient || den.kind() == Kind::Quotient) {
    Expr a = num.kind() == Kind::Quotient ? num.numerator() : num;
    Expr b = num.kind() == Kind::Quotient ? num.denominator() : constant(1);
    Expr c = den.kind() == Kind::Quotient ? den.numerator() : den;
    Expr d = den.kind() == Kind::Quotient ? den.denominator() : constant(1);
    return quotient(product({std::move(a), std::move(d)}), product({std::move(b), std::move(c)}));
  }

  // Cancel syntactically equal factors and fold rational content.
  FactorList fn = factor_list(num);
  FactorList fd = factor_list(den);
  if (fd.content == 0) raise(ErrorCode::Domain, "division by zero");
  for (Factor& df : fd.factors) {
    for (Factor& nf : fn.factors) {
      if (nf.exponent > 0 && df.exponent > 0 && compare(nf.base, df.base) == 0) {
        Rational m = std::min(nf.exponent, df.exponent);
        nf.exponent -= m;
        df.exponent -= m;
        if (df.exponent == 0) break;
      }
    }
  }
  Rational coeff = fn.content / fd.content;
  std::vector<Expr> nfs{constant(coeff)};
  for (Factor& f : fn.factors)
    if (f.exponent != 0) nfs.push_back(power(f.base, f.exponent));
  std::vector<Expr> dfs;
  for (Factor& f : fd.factors)
    if (f.exponent != 0) dfs.push_back(power(f.base, f.exponent));
  Expr n2 = product(std::move(nfs));
  if (dfs.empty()) return n2;
  Expr d2 = product(std::move(dfs));
  if (d2.is_constant()) {
    if (d2.constant_value() == 0) raise(ErrorCode::Domain, "division by zero");
    return product({constant(Rational(1) / d2.constant_value()), std::move(n2)});
  }
  if (n2.is_constant(0)) return constant(0);
  if (d2.kind() == Kind::Quotient || n2.kind() == Kind::Quotient) return quotient(std::move(n2), std::move(d2));
  return raw_quotient(std::move(n2), std::move(d2));
}

Expr sum(std::vector<Expr> terms) {
  // Flatten nested sums.
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (Expr& t : terms) {
    if (t.kind() == Kind::Sum)
      flat.insert(flat.end(), t.operands().begin(), t.operands().end());
    else
      flat.push_back(std::move(t));
  }

  // Split each term into rational coefficient times core, then collect.
  struct Part {
    Rational coeff;
    Expr core;  // core == constant(1) marks the pure-constant bucket
  };
  std::vector<Part> parts;
  parts.reserve(flat.size());
  std::function<Part(const Expr&)> split = [&](const Expr& t) -> Part {
    if (t.is_constant()) return {t.constant_value(), constant(1)};
    if (t.kind() == Kind::Product && t.operands().front().is_constant()) {
      const auto& ops = t.operands();
      Rational c = ops.front().constant_value();
      if (ops.size() == 2) return {std::move(c), ops[1]};
      std::vector<Expr> rest(ops.begin() + 1, ops.end());
      return {std::move(c), make(Kind::Product, Rational(0), "", 0, Builtin::Exp, std::move(rest))};
    }
    if (t.kind() == Kind::Quotient) {
      Part pn = split(t.numerator());
      return {std::move(pn.coeff), pn.core.is_constant(1) ? raw_quotient(constant(1), t.denominator())
                                                          : raw_quotient(pn.core, t.denominator())};
    }
    return {Rational(1), t};
  };
  for (const Expr& t : flat) {
    Part p = split(t);
    if (p.coeff != 0) parts.push_back(std::move(p));
  }

  std::sort(parts.begin(), parts.end(),
            [](const Part& a, const Part& b) { return compare(a.core, b.core) < 0; });

  std::vector<Expr> collected;
  std::optional<Rational> const_term;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i + 1;
    Rational total = parts[i].coeff;
    while (j < parts.size() && compare(parts[j].core, parts[i].core) == 0) {
      total += parts[j].coeff;
      ++j;
    }
    if (total != 0) {
      if (parts[i].core.is_constant(1)) {
        const_term = total;
      } else if (total == 1) {
        collected.push_back(parts[i].core);
      } else {
        collected.push_back(product({constant(total), parts[i].core}));
      }
    }
    i = j;
  }

  std::sort(collected.begin(), collected.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (const_term) collected.push_back(constant(*const_term));
  if (collected.empty()) return constant(0);
  if (collected.size() == 1) return collected[0];
  return make(Kind::Sum, Rational(0), "", 0, Builtin::Exp, std::move(collected));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, product({constant(-1), b})}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
Expr operator-(const Expr& a) { return product({constant(-1), a}); }

// -- differentiation ----------------------------------------------------------

Expr differentiate(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
      return constant(0);
    case Kind::Variable:
      return constant(1);
    case Kind::Sum: {
      std::vector<Expr> ds;
      ds.reserve(e.operands().size());
      for (const Expr& t : e.operands()) ds.push_back(differentiate(t));
      return sum(std::move(ds));
    }
    case Kind::Product: {
      const auto& ops = e.operands();
      std::vector<Expr> terms;
      terms.reserve(ops.size());
      for (std::size_t i = 0; i < ops.size(); ++i) {
        std::vector<Expr> fs;
        fs.reserve(ops.size());
        for (std::size_t j = 0; j < ops.size(); ++j) fs.push_back(i == j ? differentiate(ops[j]) : ops[j]);
        terms.push_back(product(std::move(fs)));
      }
      return sum(std::move(terms));
    }
    case Kind::Power: {
      const Rational& r = e.exponent();
      return product({constant(r), power(e.base(), r - 1), differentiate(e.base())});
    }
    case Kind::Quotient: {
      const Expr& n = e.numerator();
      const Expr& d = e.denominator();
      Expr num = sum({product({differentiate(n), d}), product({constant(-1), n, differentiate(d)})});
      return quotient(std::move(num), power(d, 2));
    }
    case Kind::FunctionApp: {
      const Expr& u = e.argument();
      Expr du = differentiate(u);
      switch (e.builtin()) {
        case Builtin::Exp: return product({apply(Builtin::Exp, u), std::move(du)});
        case Builtin::Ln: return quotient(std::move(du), u);
        case Builtin::Sin: return product({apply(Builtin::Cos, u), std::move(du)});
        case Builtin::Cos: return product({constant(-1), apply(Builtin::Sin, u), std::move(du)});
        case Builtin::Sinh: return product({apply(Builtin::Cosh, u), std::move(du)});
        case Builtin::Cosh: return product({apply(Builtin::Sinh, u), std::move(du)});
        case Builtin::Tanh: {
          Expr t = apply(Builtin::Tanh, u);
          return product({sum({constant(1), product({constant(-1), t, t})}), std::move(du)});
        }
      }
      return constant(0);
    }
    case Kind::UninterpretedApp: {
      Expr bumped = symbol(e.name(), e.derivative_order() + 1, e.argument());
      if (e.argument().kind() == Kind::Variable) return bumped;
      return product({std::move(bumped), differentiate(e.argument())});
    }
  }
  return constant(0);
}

Expr differentiate(const Expr& e, int times) {
  Expr d = e;
  for (int i = 0; i < times; ++i) d = differentiate(d);
  return d;
}

// -- rebuilding / substitution ------------------------------------------------

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Sum: {
      std::vector<Expr> ts;
      ts.reserve(e.operands().size());
      for (const Expr& t : e.operands()) ts.push_back(simplify(t));
      return sum(std::move(ts));
    }
    case Kind::Product: {
      std::vector<Expr> fs;
      fs.reserve(e.operands().size());
      for (const Expr& f : e.operands()) fs.push_back(simplify(f));
      return product(std::move(fs));
    }
    case Kind::Power:
      return power(simplify(e.base()), e.exponent());
    case Kind::Quotient:
      return quotient(simplify(e.numerator()), simplify(e.denominator()));
    case Kind::FunctionApp:
      return apply(e.builtin(), simplify(e.argument()));
    case Kind::UninterpretedApp:
      return symbol(e.name(), e.derivative_order(), simplify(e.argument()));
  }
  return e;
}

Expr substitute_symbol(const Expr& e, const std::string& name, const Expr& replacement) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Sum:
    case Kind::Product: {
      std::vector<Expr> ks;
      ks.reserve(e.operands().size());
      for (const Expr& k : e.operands()) ks.push_back(substitute_symbol(k, name, replacement));
      return e.kind() == Kind::Sum ? sum(std::move(ks)) : product(std::move(ks));
    }
    case Kind::Power:
      return power(substitute_symbol(e.base(), name, replacement), e.exponent());
    case Kind::Quotient:
      return quotient(substitute_symbol(e.numerator(), name, replacement),
                      substitute_symbol(e.denominator(), name, replacement));
    case Kind::FunctionApp:
      return apply(e.builtin(), substitute_symbol(e.argument(), name, replacement));
    case Kind::UninterpretedApp: {
      Expr arg = substitute_symbol(e.argument(), name, replacement);
      if (e.name() == name && arg.kind() == Kind::Variable)
        return differentiate(replacement, e.derivative_order());
      return symbol(e.name(), e.derivative_order(), std::move(arg));
    }
  }
  return e;
}

Expr substitute_builtin(const Expr& e, const std::map<Builtin, Builtin>& mapping) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Sum:
    case Kind::Product: {
      std::vector<Expr> ks;
      ks.reserve(e.operands().size());
      for (const Expr& k : e.operands()) ks.push_back(substitute_builtin(k, mapping));
      return e.kind() == Kind::Sum ? sum(std::move(ks)) : product(std::move(ks));
    }
    case Kind::Power:
      return power(substitute_builtin(e.base(), mapping), e.exponent());
    case Kind::Quotient:
      return quotient(substitute_builtin(e.numerator(), mapping),
                      substitute_builtin(e.denominator(), mapping));
    case Kind::FunctionApp: {
      Builtin fn = e.builtin();
      if (auto it = mapping.find(fn); it != mapping.end()) fn = it->second;
      return apply(fn, substitute_builtin(e.argument(), mapping));
    }
    case Kind::UninterpretedApp:
      return symbol(e.name(), e.derivative_order(), substitute_builtin(e.argument(), mapping));
  }
  return e;
}

namespace {
void collect_orders(const Expr& e, std::map<std::string, int>& out) {
  if (e.kind() == Kind::UninterpretedApp) {
    auto [it, inserted] = out.try_emplace(e.name(), e.derivative_order());
    if (!inserted) it->second = std::max(it->second, e.derivative_order());
  }
  for (const Expr& k : e.operands()) collect_orders(k, out);
}
}  // namespace

std::map<std::string, int> symbol_orders(const Expr& e) {
  std::map<std::string, int> out;
  collect_orders(e, out);
  return out;
}

}  // namespace forge
