#include "forge/zerotest.hpp"

#include <algorithm>

#include "forge/error.hpp"

namespace forge {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::NonZero: return "NonZero";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

long long Rng::uniform_int(long long lo, long long hi) {
  return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Polynomial random_polynomial(Rng& rng, int degree) {
  Polynomial p;
  p.coeffs.resize(degree + 1);
  for (int i = 0; i <= degree; ++i) p.coeffs[i] = Rational(rng.uniform_int(-5, 5));
  if (p.coeffs[degree] == 0)
    p.coeffs[degree] = Rational(rng.uniform_int(1, 5)) * Rational(rng.uniform_int(0, 1) == 0 ? -1 : 1);
  return p;
}

ZeroResult is_zero(const Expr& e, const ZeroTestOptions& opts) {
  if (opts.trials < 1) raise(ErrorCode::Config, "zero test needs at least one trial");
  if (!(opts.domain_lo < opts.domain_hi)) raise(ErrorCode::Config, "zero test domain is empty");

  std::map<std::string, int> symbols = symbol_orders(e);
  Rng rng(opts.seed);
  ZeroResult result;

  for (int trial = 0; trial < opts.trials; ++trial) {
    EvalContext ctx;
    ctx.precision = opts.precision;
    for (const auto& [name, order] : symbols) {
      int degree = std::max(opts.binding_degree, order + 2);
      ctx.bindings[name] = random_polynomial(rng, degree);
    }

    bool evaluated = false;
    for (int attempt = 0; attempt <= opts.retry_cap && !evaluated; ++attempt) {
      ctx.x = rng.uniform(opts.domain_lo, opts.domain_hi);
      try {
        Evaluated ev = evaluate_with_magnitude(e, ctx);
        evaluated = true;
        ++result.successes;
        Real tolerance = Real(opts.atol) + Real(opts.rtol) * ev.magnitude;
        if (abs(ev.value) > tolerance) {
          result.verdict = Verdict::NonZero;
          result.witness_point = ctx.x;
          result.witness_value = to_double(ev.value);
          return result;
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::Domain) throw;
      }
    }
    if (!evaluated) ++result.failed_trials;
  }

  int needed = std::max(1, opts.trials / 2);
  result.verdict = result.successes >= needed ? Verdict::Zero : Verdict::Inconclusive;
  return result;
}

}  // namespace forge
