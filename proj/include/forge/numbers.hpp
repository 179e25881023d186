#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace forge {

/// Exact rational scalar (GMP-backed). All literal constants in expressions
/// are stored as Rational; no floating literals ever enter a tree.
using Rational = boost::multiprecision::mpq_rational;

/// High-precision float with runtime-selectable decimal precision (MPFR).
using Real = boost::multiprecision::mpfr_float;

/// RAII guard that sets the default Real precision in decimal digits and
/// restores the previous value on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

bool is_integer(const Rational& r);

/// Rational -> long; requires an integer value that fits.
long long to_long(const Rational& r);

/// Exact "p" or "p/q" form.
std::string rational_to_string(const Rational& r);

/// r^e with integer exponent, exact. e < 0 requires r != 0.
Rational pow_rational(const Rational& r, long long e);

/// C(n, k) as an exact integer-valued rational.
Rational binomial(int n, int k);

double to_double(const Real& v);

}  // namespace forge
