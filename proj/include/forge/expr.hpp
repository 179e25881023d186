#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forge/numbers.hpp"

namespace forge {

enum class Kind {
  Constant,
  Variable,
  Sum,
  Product,
  Power,
  Quotient,
  FunctionApp,
  UninterpretedApp,
};

enum class Builtin { Exp, Ln, Sin, Cos, Sinh, Cosh, Tanh };

const char* builtin_name(Builtin fn);
std::optional<Builtin> builtin_from_name(std::string_view name);

/// Immutable symbolic expression in one variable.
///
/// Trees are normalized at construction: sums and products are flattened and
/// sorted, rational constants are folded, like terms are collected, equal
/// power bases are merged, quotients cancel syntactically equal factors, and
/// negative exponents are rewritten as quotients. All rewrites preserve the
/// germ-level value of the expression. Uninterpreted symbols carry a formal
/// derivative order so generic coefficient identities stay representable.
class Expr {
 public:
  struct Node;

  /// Default-constructs the constant 0.
  Expr();

  Kind kind() const;
  bool is_constant() const;
  bool is_constant(long long v) const;
  /// Value when this is a Constant node.
  const Rational& constant_value() const;
  /// Rational value if the node is a Constant, otherwise nullopt.
  std::optional<Rational> rational_value() const;
  /// Variable or uninterpreted-symbol name.
  const std::string& name() const;
  /// Formal derivative order of an UninterpretedApp.
  int derivative_order() const;
  Builtin builtin() const;
  /// Power exponent (always rational, never 0 or 1, never negative).
  const Rational& exponent() const;
  /// Sum/Product operands (>= 2 after normalization).
  const std::vector<Expr>& operands() const;
  const Expr& base() const;        // Power
  const Expr& numerator() const;   // Quotient
  const Expr& denominator() const; // Quotient
  const Expr& argument() const;    // FunctionApp / UninterpretedApp

  std::size_t tree_size() const;

  explicit Expr(std::shared_ptr<const Node> node);
  const std::shared_ptr<const Node>& node() const { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

// -- constructors ------------------------------------------------------------

Expr constant(Rational value);
Expr constant(long long value);
Expr variable(const std::string& name = "x");
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr power(Expr base, Rational exponent);
Expr quotient(Expr num, Expr den);
Expr apply(Builtin fn, Expr argument);
/// Uninterpreted symbol `name` with `order` formal derivatives, applied to `argument`.
Expr symbol(const std::string& name, int order, Expr argument);
/// Shorthand: symbol applied to the variable x with no derivatives.
Expr symbol(const std::string& name);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// -- structure ---------------------------------------------------------------

/// Total order on expression trees; 0 iff structurally equal.
int compare(const Expr& a, const Expr& b);
bool structurally_equal(const Expr& a, const Expr& b);

// -- operations --------------------------------------------------------------

/// d/dx, total on the expression language. UninterpretedApp(f, k, x)
/// differentiates to UninterpretedApp(f, k+1, x); the chain rule applies when
/// the argument is not the bare variable.
Expr differentiate(const Expr& e);
Expr differentiate(const Expr& e, int times);

/// Normalizing rebuild. Every constructor already normalizes, so this is a
/// fixpoint pass; the result is semantically equal to the input.
Expr simplify(const Expr& e);

/// Replace UninterpretedApp(name, k, x) with the k-th derivative of `replacement`.
Expr substitute_symbol(const Expr& e, const std::string& name, const Expr& replacement);

/// Replace builtin function heads (e.g. Sinh -> Sin) throughout.
Expr substitute_builtin(const Expr& e, const std::map<Builtin, Builtin>& mapping);

/// Uninterpreted symbols appearing in e, with the highest derivative order used.
std::map<std::string, int> symbol_orders(const Expr& e);

}  // namespace forge
