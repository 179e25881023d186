#include "forge/numbers.hpp"

#include "forge/error.hpp"

namespace forge {

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

long long to_long(const Rational& r) {
  if (!is_integer(r)) raise(ErrorCode::Domain, "expected integer rational, got " + rational_to_string(r));
  return numerator(r).convert_to<long long>();
}

std::string rational_to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational pow_rational(const Rational& r, long long e) {
  if (e == 0) return Rational(1);
  if (r == 0 && e < 0) raise(ErrorCode::Domain, "zero raised to a negative power");
  Rational base = e < 0 ? Rational(denominator(r), numerator(r)) : r;
  unsigned long long n = static_cast<unsigned long long>(e < 0 ? -e : e);
  Rational acc(1);
  while (n > 0) {
    if (n & 1ull) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational acc(1);
  for (int i = 0; i < k; ++i) {
    acc *= Rational(n - i);
    acc /= Rational(i + 1);
  }
  return acc;
}

double to_double(const Real& v) { return v.convert_to<double>(); }

}  // namespace forge
