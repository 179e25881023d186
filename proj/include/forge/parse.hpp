#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "forge/error.hpp"
#include "forge/expr.hpp"

namespace forge {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct ParseDiagnostic {
  std::string message;
  SourceSpan span;
  std::string expected;  // token hint, may be empty
};

class ParseError : public Error {
 public:
  explicit ParseError(ParseDiagnostic diagnostic);
  const ParseDiagnostic& diagnostic() const { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

/// Named rational constants substituted at parse time. Identifiers that are
/// neither builtins, nor `x`, nor declared here parse as uninterpreted
/// symbols applied to x; `name'`/`name''` mark formal derivatives.
struct ParseOptions {
  std::map<std::string, Rational> constants;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := number | 'x' | ident '(' expr ')' | ident | '(' expr ')'
/// Numbers are decimal integers (ratios come out of '/'). `^` with a
/// non-numeric exponent rewrites to exp(e*ln(base)).
Expr parse_expr(std::string_view text, const ParseOptions& options = {});

/// Minimal-parentheses form that re-parses to a structurally equal tree.
std::string print_expr(const Expr& e);

}  // namespace forge
