#pragma once

#include <cstdint>

#include "forge/eval.hpp"
#include "forge/expr.hpp"

namespace forge {

enum class Verdict { Zero, NonZero, Inconclusive };

const char* verdict_name(Verdict v);

struct ZeroTestOptions {
  double domain_lo = 1.0;
  double domain_hi = 2.0;
  int trials = 12;
  double atol = 1e-12;
  double rtol = 1e-12;
  std::uint64_t seed = 0xC0FFEE;
  int retry_cap = 8;       // resamples per point on domain errors
  unsigned precision = 30; // decimal digits
  int binding_degree = 4;  // minimum degree of random symbol bindings

  ZeroTestOptions with_domain(double lo, double hi) const {
    ZeroTestOptions o = *this;
    o.domain_lo = lo;
    o.domain_hi = hi;
    return o;
  }
  ZeroTestOptions with_seed(std::uint64_t s) const {
    ZeroTestOptions o = *this;
    o.seed = s;
    return o;
  }
};

struct ZeroResult {
  Verdict verdict = Verdict::Inconclusive;
  double witness_point = 0.0;  // sample where |value| exceeded tolerance
  double witness_value = 0.0;
  int successes = 0;
  int failed_trials = 0;

  bool zero() const { return verdict == Verdict::Zero; }
};

/// Probabilistic zero test: samples points from [domain_lo, domain_hi] with a
/// seeded deterministic generator, instantiating every uninterpreted symbol
/// with a fresh random polynomial per trial. Zero iff every successful
/// evaluation satisfies |value| <= atol + rtol * magnitude. Points that hit a
/// domain error are resampled up to retry_cap times; Inconclusive when fewer
/// than half the trials produce a usable sample.
ZeroResult is_zero(const Expr& e, const ZeroTestOptions& opts = {});

/// Deterministic splitmix64 generator used for all sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform01();
  double uniform(double lo, double hi);
  long long uniform_int(long long lo, long long hi);  // inclusive

 private:
  std::uint64_t state_;
};

/// Random polynomial of the given degree with integer coefficients in
/// [-5, 5] and a nonzero leading coefficient.
Polynomial random_polynomial(Rng& rng, int degree);

}  // namespace forge
