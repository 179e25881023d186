#include "forge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "forge/error.hpp"

namespace forge {

namespace {

// Max/RMS accumulator with compensated summation for the squared residuals.
struct Residuals {
  double max_abs = 0.0;
  double sum_sq = 0.0;
  double comp = 0.0;
  int count = 0;
  int skipped = 0;

  void add(double r) {
    double a = std::abs(r);
    max_abs = std::max(max_abs, a);
    double y = a * a - comp;
    double t = sum_sq + y;
    comp = (t - sum_sq) - y;
    sum_sq = t;
    ++count;
  }

  ResidualReport report(const char* what) const {
    int total = count + skipped;
    if (total == 0 || skipped * 5 > total)
      raise(ErrorCode::TooManySkipped, std::string(what) + ": " + std::to_string(skipped) + " of " +
                                           std::to_string(total) + " points skipped");
    ResidualReport rep;
    rep.max_abs = max_abs;
    rep.rms = count > 0 ? std::sqrt(sum_sq / count) : 0.0;
    rep.skipped = skipped;
    rep.evaluated = count;
    return rep;
  }
};

}  // namespace

ResidualReport ode_residual(const std::vector<Expr>& coeffs, const Expr& f, const Grid1D& grid,
                            unsigned precision) {
  if (grid.n < 3) raise(ErrorCode::Config, "grid needs at least 3 points");
  std::vector<Expr> derivatives{simplify(f)};
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    derivatives.push_back(simplify(differentiate(derivatives.back())));

  EvalContext ctx;
  ctx.precision = precision;
  Residuals acc;
  for (int i = 0; i < grid.n; ++i) {
    ctx.x = grid.point(i);
    try {
      PrecisionScope scope(precision);
      Real value(0);
      for (std::size_t j = 0; j < coeffs.size(); ++j)
        value += evaluate(coeffs[j], ctx) * evaluate(derivatives[j], ctx);
      acc.add(to_double(value));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Domain) throw;
      ++acc.skipped;
    }
  }
  ResidualReport rep = acc.report("ode_residual");
  rep.spacings = {grid.spacing()};
  return rep;
}

std::vector<Rk4Sample> rk4_solve(const Expr& a2, const Expr& a1, const Expr& a0, double x0,
                                 double x1, double f0, double df0, double step) {
  if (!(step > 0) || !(x1 > x0)) raise(ErrorCode::Config, "rk4 needs step > 0 and x1 > x0");
  EvalContext ctx;
  ctx.precision = 30;

  auto slope = [&](double x, double y, double dy) {
    ctx.x = x;
    double c2 = to_double(evaluate(a2, ctx));
    if (std::abs(c2) < 1e-14)
      raise(ErrorCode::SingularLeadingCoefficient,
            "leading coefficient vanishes at x = " + std::to_string(x));
    double c1 = to_double(evaluate(a1, ctx));
    double c0 = to_double(evaluate(a0, ctx));
    return -(c1 * dy + c0 * y) / c2;
  };

  std::vector<Rk4Sample> out;
  double x = x0, y = f0, dy = df0;
  out.push_back({x, y, dy});
  while (x < x1 - 1e-15) {
    double h = std::min(step, x1 - x);
    double k1y = dy, k1d = slope(x, y, dy);
    double k2y = dy + h / 2 * k1d, k2d = slope(x + h / 2, y + h / 2 * k1y, dy + h / 2 * k1d);
    double k3y = dy + h / 2 * k2d, k3d = slope(x + h / 2, y + h / 2 * k2y, dy + h / 2 * k2d);
    double k4y = dy + h * k3d, k4d = slope(x + h, y + h * k3y, dy + h * k3d);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    dy += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
    x += h;
    out.push_back({x, y, dy});
  }
  return out;
}

ResidualReport pde_fd_residual(const SolutionField& v, const Expr& W, const Grid1D& t_grid,
                               const Grid1D& x_grid, unsigned precision) {
  if (t_grid.n < 3 || x_grid.n < 3) raise(ErrorCode::Config, "grids need at least 3 points");

  FieldSampler sampler(v, precision);
  std::vector<std::vector<double>> values(t_grid.n, std::vector<double>(x_grid.n));
  for (int i = 0; i < t_grid.n; ++i)
    for (int j = 0; j < x_grid.n; ++j) values[i][j] = sampler(t_grid.point(i), x_grid.point(j));

  EvalContext ctx;
  ctx.precision = precision;
  double dt = t_grid.spacing();
  double dx = x_grid.spacing();
  Residuals acc;
  for (int i = 1; i + 1 < t_grid.n; ++i) {
    for (int j = 1; j + 1 < x_grid.n; ++j) {
      double w;
      try {
        ctx.x = x_grid.point(j);
        w = to_double(evaluate(W, ctx));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::Domain) throw;
        ++acc.skipped;
        continue;
      }
      double vtt = (values[i + 1][j] - 2 * values[i][j] + values[i - 1][j]) / (dt * dt);
      double vxx = (values[i][j + 1] - 2 * values[i][j] + values[i][j - 1]) / (dx * dx);
      acc.add(vtt - vxx - w * values[i][j]);
    }
  }
  ResidualReport rep = acc.report("pde_fd_residual");
  rep.spacings = {dt, dx};
  return rep;
}

double convergence_order(const ResidualReport& coarse, const ResidualReport& fine) {
  if (coarse.spacings.size() != fine.spacings.size())
    raise(ErrorCode::Config, "residual reports come from different grid shapes");
  for (std::size_t d = 0; d < coarse.spacings.size(); ++d) {
    if (std::abs(fine.spacings[d] * 2 - coarse.spacings[d]) > 1e-9 * coarse.spacings[d])
      raise(ErrorCode::Config, "fine grid must halve the coarse spacing in every dimension");
  }
  const double noise_floor = 100.0 * std::numeric_limits<double>::epsilon();
  if (coarse.max_abs < noise_floor || fine.max_abs < noise_floor)
    raise(ErrorCode::DegenerateResidual, "exact");
  return std::log2(coarse.max_abs / fine.max_abs);
}

ResidualReport intertwine_numeric_check(const DiffOp& L, const DiffOp& M, const DiffOp& T,
                                        const std::vector<Expr>& probes, const Grid1D& grid,
                                        unsigned precision) {
  DiffOp defect = op_sub(op_mul(M, T), op_mul(T, L));
  EvalContext ctx;
  ctx.precision = precision;
  Residuals acc;
  for (const Expr& probe : probes) {
    Expr applied = op_apply(defect, probe);
    for (int i = 0; i < grid.n; ++i) {
      ctx.x = grid.point(i);
      try {
        acc.add(to_double(evaluate(applied, ctx)));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::Domain) throw;
        ++acc.skipped;
      }
    }
  }
  ResidualReport rep = acc.report("intertwine_numeric_check");
  rep.spacings = {grid.spacing()};
  return rep;
}

}  // namespace forge
