#include "forge/parse.hpp"

#include <cctype>
#include <vector>

namespace forge {

ParseError::ParseError(ParseDiagnostic diagnostic)
    : Error(ErrorCode::Parse,
            diagnostic.message + " at " + std::to_string(diagnostic.span.start) + ".." +
                std::to_string(diagnostic.span.end) +
                (diagnostic.expected.empty() ? "" : " (expected " + diagnostic.expected + ")")),
      diagnostic_(std::move(diagnostic)) {}

namespace {

struct Token {
  enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::size_t start;
  std::size_t end;
  std::string text;
  int primes = 0;
};

[[noreturn]] void fail(std::string message, std::size_t start, std::size_t end, std::string expected = "") {
  throw ParseError(ParseDiagnostic{std::move(message), SourceSpan{start, end}, std::move(expected)});
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Token::Number, start, i, std::string(text.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      Token tok{Token::Ident, start, i, std::string(text.substr(start, i - start))};
      while (i < text.size() && text[i] == '\'') {
        ++tok.primes;
        ++i;
      }
      tok.end = i;
      out.push_back(std::move(tok));
      continue;
    }
    Token::Type type;
    switch (c) {
      case '+': type = Token::Plus; break;
      case '-': type = Token::Minus; break;
      case '*': type = Token::Star; break;
      case '/': type = Token::Slash; break;
      case '^': type = Token::Caret; break;
      case '(': type = Token::LParen; break;
      case ')': type = Token::RParen; break;
      default:
        fail("unknown token", start, start + 1);
    }
    out.push_back({type, start, start + 1, std::string(text.substr(start, 1))});
    ++i;
  }
  out.push_back({Token::End, text.size(), text.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), options_(options) {}

  Expr run() {
    if (peek().type == Token::End) fail("empty input", 0, 0, "expression");
    Expr e = parse_sum();
    if (peek().type != Token::End) {
      const Token& t = peek();
      if (t.type == Token::RParen) fail("unbalanced parenthesis", t.start, t.end);
      fail("unexpected token", t.start, t.end, "end of input");
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Token::Type type) {
    if (peek().type == type) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr e = parse_term();
    while (true) {
      if (accept(Token::Plus)) {
        e = e + parse_term();
      } else if (accept(Token::Minus)) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      if (accept(Token::Star)) {
        e = e * parse_factor();
      } else if (accept(Token::Slash)) {
        e = e / parse_factor();
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    if (accept(Token::Minus)) return -parse_factor();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (!accept(Token::Caret)) return base;
    Expr exponent = parse_factor();
    if (auto r = exponent.rational_value()) return power(std::move(base), *r);
    // Non-numeric exponent: b^e = exp(e * ln b).
    return apply(Builtin::Exp, exponent * apply(Builtin::Ln, std::move(base)));
  }

  Expr parse_parenthesized(std::size_t open_start) {
    ++depth_;
    Expr e = parse_sum();
    if (!accept(Token::RParen)) {
      const Token& t = peek();
      fail("unbalanced parenthesis", t.type == Token::End ? open_start : t.start, t.end, ")");
    }
    --depth_;
    return e;
  }

  Expr parse_atom() {
    const Token& t = advance();
    switch (t.type) {
      case Token::Number: {
        // Strip leading zeros; the GMP string constructor would read them as octal.
        std::size_t nz = t.text.find_first_not_of('0');
        std::string digits = nz == std::string::npos ? "0" : t.text.substr(nz);
        return constant(Rational(boost::multiprecision::mpz_int(digits)));
      }
      case Token::LParen:
        return parse_parenthesized(t.start);
      case Token::Ident:
        return parse_identifier(t);
      case Token::End:
        if (depth_ > 0) fail("unbalanced parenthesis", t.start, t.end, ")");
        fail("unexpected end of input", t.start, t.end, "expression");
      case Token::RParen:
        fail("unbalanced parenthesis", t.start, t.end);
      default:
        fail("unexpected token", t.start, t.end, "expression");
    }
  }

  Expr parse_identifier(const Token& t) {
    if (t.text == "x") {
      if (t.primes > 0) fail("derivative mark on the variable", t.start, t.end);
      if (peek().type == Token::LParen) fail("the variable cannot be applied", t.start, peek().end);
      return variable();
    }
    if (auto fn = builtin_from_name(t.text)) {
      if (t.primes > 0)
        fail("derivative marks are only valid on symbol names", t.start, t.end);
      if (!accept(Token::LParen)) {
        const Token& n = peek();
        fail("function name needs an argument list", n.start, n.end, "(");
      }
      return apply(*fn, parse_parenthesized(t.start));
    }
    if (auto it = options_.constants.find(t.text); it != options_.constants.end()) {
      if (t.primes > 0) fail("derivative mark on a declared constant", t.start, t.end);
      if (peek().type == Token::LParen)
        fail("declared constant cannot be applied", t.start, peek().end);
      return constant(it->second);
    }
    // Uninterpreted symbol, optionally with an explicit argument.
    if (accept(Token::LParen)) return symbol(t.text, t.primes, parse_parenthesized(t.start));
    return symbol(t.text, t.primes, variable());
  }

  std::vector<Token> tokens_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

// -- printing ------------------------------------------------------------------

constexpr int kPrecSum = 1;
constexpr int kPrecTerm = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant: {
      const Rational& v = e.constant_value();
      if (v < 0) return kPrecUnary;
      return is_integer(v) ? kPrecAtom : kPrecTerm;
    }
    case Kind::Variable:
    case Kind::FunctionApp:
    case Kind::UninterpretedApp:
      return kPrecAtom;
    case Kind::Power:
      return kPrecPow;
    case Kind::Product:
    case Kind::Quotient:
      return kPrecTerm;
    case Kind::Sum:
      return kPrecSum;
  }
  return kPrecAtom;
}

std::string print(const Expr& e, int min_prec);

bool is_negative_term(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
      return e.constant_value() < 0;
    case Kind::Product:
      return e.operands().front().is_constant() && e.operands().front().constant_value() < 0;
    case Kind::Quotient:
      return is_negative_term(e.numerator());
    default:
      return false;
  }
}

std::string print_bare(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
      return rational_to_string(e.constant_value());
    case Kind::Variable:
      return e.name();
    case Kind::Sum: {
      std::string out = print(e.operands().front(), kPrecSum);
      for (std::size_t i = 1; i < e.operands().size(); ++i) {
        const Expr& t = e.operands()[i];
        if (is_negative_term(t)) {
          out += "-" + print(-t, kPrecTerm);
        } else {
          out += "+" + print(t, kPrecTerm);
        }
      }
      return out;
    }
    case Kind::Product: {
      const auto& ops = e.operands();
      std::string out;
      std::size_t first = 0;
      if (ops.front().is_constant()) {
        Rational c = ops.front().constant_value();
        first = 1;
        if (c < 0) {
          out += "-";
          c = -c;
        }
        if (c != 1) out += rational_to_string(c) + "*";
      }
      for (std::size_t i = first; i < ops.size(); ++i) {
        if (i > first) out += "*";
        out += print(ops[i], kPrecPow);
      }
      return out;
    }
    case Kind::Quotient:
      return print(e.numerator(), kPrecTerm) + "/" + print(e.denominator(), kPrecPow);
    case Kind::Power: {
      std::string out = print(e.base(), kPrecAtom) + "^";
      const Rational& r = e.exponent();
      if (is_integer(r) && r > 0) return out + rational_to_string(r);
      return out + "(" + rational_to_string(r) + ")";
    }
    case Kind::FunctionApp:
      return std::string(builtin_name(e.builtin())) + "(" + print(e.argument(), 0) + ")";
    case Kind::UninterpretedApp: {
      std::string out = e.name();
      out.append(static_cast<std::size_t>(e.derivative_order()), '\'');
      return out + "(" + print(e.argument(), 0) + ")";
    }
  }
  return "?";
}

std::string print(const Expr& e, int min_prec) {
  std::string body = print_bare(e);
  if (precedence(e) < min_prec) return "(" + body + ")";
  return body;
}

}  // namespace

Expr parse_expr(std::string_view text, const ParseOptions& options) {
  try {
    Parser parser(lex(text), options);
    return parser.run();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    // Construction-time domain faults (e.g. "1/0") surface as diagnostics too.
    throw ParseError(ParseDiagnostic{err.what(), SourceSpan{0, text.size()}, ""});
  }
}

std::string print_expr(const Expr& e) { return print(e, 0); }

}  // namespace forge
