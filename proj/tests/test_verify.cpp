#include <doctest.h>

#include <cmath>

#include "forge/verify.hpp"
#include "helpers.hpp"

using namespace forge;
using namespace forge::testing;

TEST_CASE("ode_residual: exact solutions sit at the precision floor") {
  ResidualReport r1 = ode_residual({constant(0), constant(0), constant(1)}, parsed("x+1"),
                                   Grid1D{1.0, 2.0, 101});
  CHECK(r1.max_abs <= 1e-12);
  CHECK(r1.skipped == 0);

  ResidualReport r2 = ode_residual({constant(-1), constant(0), constant(1)}, parsed("cosh(x)"),
                                   Grid1D{1.0, 2.0, 101});
  CHECK(r2.max_abs <= 1e-12);

  Expr weber2 = parsed("(x^2 - 1)*exp(-x^2/4)");
  ResidualReport r3 = ode_residual({parsed("5/2 - x^2/4"), constant(0), constant(1)}, weber2,
                                   Grid1D{-2.0, 2.0, 101});
  CHECK(r3.max_abs <= 1e-10);
}

TEST_CASE("ode_residual: a nonsolution has a visible residual") {
  ResidualReport r = ode_residual({constant(1), constant(0), constant(1)}, parsed("x^2"),
                                  Grid1D{1.0, 2.0, 33});
  CHECK(r.max_abs > 1.0);
  CHECK(r.rms > 0.0);
  CHECK(r.rms <= r.max_abs);
}

TEST_CASE("ode_residual: too many singular points") {
  Expr f = parsed("1/(x*(x - 1/4)*(x - 1/2)*(x - 3/4))");
  CHECK_THROWS_AS(ode_residual({constant(1)}, f, Grid1D{0.0, 1.0, 5}), Error);
}

TEST_CASE("rk4_solve: harmonic oscillator hits sin(1) at 1e-9") {
  auto traj = rk4_solve(constant(1), constant(0), constant(1), 0.0, 1.0, 0.0, 1.0, 1e-3);
  CHECK(std::abs(traj.back().value - std::sin(1.0)) < 1e-9);
  CHECK(std::abs(traj.back().derivative - std::cos(1.0)) < 1e-9);
}

TEST_CASE("rk4_solve: matches the closed form through the v2 potential") {
  // h'' - 2/(x+1)^2 h = 0 has the solution h = (x+1)^2.
  auto traj = rk4_solve(constant(1), constant(0), parsed("-2/(x+1)^2"), 1.0, 2.0, 4.0, 4.0, 1e-3);
  EvalContext ctx;
  ctx.x = traj.back().x;
  double closed = to_double(evaluate(parsed("(x+1)^2"), ctx));
  CHECK(std::abs(traj.back().value - closed) < 1e-8);
}

TEST_CASE("rk4_solve: singular leading coefficient is rejected") {
  CHECK_THROWS_AS(rk4_solve(variable(), constant(0), constant(1), -1.0, 1.0, 1.0, 0.0, 1e-2),
                  Error);
}

TEST_CASE("rk4_solve: catalog eigenfunctions integrate to 1e-8") {
  for (const CatalogEntry& entry : catalog()) {
    CAPTURE(entry.name);
    Expr a0 = simplify(entry.V + constant(entry.lambda));
    EvalContext ctx;
    ctx.x = entry.domain_lo;
    double h0 = to_double(evaluate(entry.h, ctx));
    double dh0 = to_double(evaluate(differentiate(entry.h), ctx));
    auto traj = rk4_solve(constant(1), constant(0), a0, entry.domain_lo, entry.domain_hi, h0, dh0, 1e-3);
    ctx.x = traj.back().x;
    double closed = to_double(evaluate(entry.h, ctx));
    CHECK(std::abs(traj.back().value - closed) < 1e-8 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("pde_fd_residual: wave equation residual converges at order 2") {
  // Unequal spacings keep the characteristic stencils from canceling exactly.
  KGChainNode wave = kg_step(constant(0), constant(1), Rational(0));
  SolutionField v = SolutionField::d_alembert(parsed("sin(x)"), constant(0));
  ResidualReport coarse = pde_fd_residual(v, wave.W, Grid1D{0.0, 1.0, 17}, Grid1D{2.0, 3.0, 21});
  ResidualReport fine = pde_fd_residual(v, wave.W, Grid1D{0.0, 1.0, 33}, Grid1D{2.0, 3.0, 41});
  double order = convergence_order(coarse, fine);
  CHECK(order == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("pde_fd_residual: corrupted potential does not converge") {
  KGChainNode node = kg_step(constant(0), parsed("x+1"), Rational(0));
  SolutionField u0 = SolutionField::d_alembert(parsed("exp(-x^2)"), parsed("sin(x)"));
  SolutionField v = transform_solution(node, u0);
  Expr bad_W = node.W + constant(1);
  ResidualReport coarse = pde_fd_residual(v, bad_W, Grid1D{0.0, 1.0, 17}, Grid1D{2.0, 3.0, 17});
  ResidualReport fine = pde_fd_residual(v, bad_W, Grid1D{0.0, 1.0, 33}, Grid1D{2.0, 3.0, 33});
  CHECK(coarse.max_abs > 0.01);
  CHECK(fine.max_abs > 0.01);
  CHECK(convergence_order(coarse, fine) < 0.5);
}

TEST_CASE("convergence_order: arithmetic, halving precondition, exact floor") {
  ResidualReport a{4e-4, 1e-4, 0, 100, {0.2}, {}};
  ResidualReport b{1e-4, 2.5e-5, 0, 100, {0.1}, {}};
  CHECK(convergence_order(a, b) == doctest::Approx(2.0));
  ResidualReport c{8e-4, 1e-4, 0, 100, {0.2}, {}};
  CHECK(convergence_order(c, b) == doctest::Approx(3.0));

  ResidualReport bad{1e-4, 2.5e-5, 0, 100, {0.15}, {}};
  CHECK_THROWS_AS(convergence_order(a, bad), Error);

  ResidualReport tiny{1e-15, 1e-16, 0, 100, {0.2}, {}};
  ResidualReport tiny2{1e-15, 1e-16, 0, 100, {0.1}, {}};
  try {
    convergence_order(tiny, tiny2);
    FAIL("expected DegenerateResidual");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegenerateResidual);
    CHECK(std::string(err.what()).find("exact") != std::string::npos);
  }
}

TEST_CASE("intertwine_numeric_check: certified results stay under 1e-10") {
  IntertwiningResult r = lift_from_eigenfunction(DiffOp::d(2), parsed("x+1"), Rational(0));
  std::vector<Expr> probes{parsed("x^3"), parsed("sin(x)"), parsed("exp(x)")};
  ResidualReport ok = intertwine_numeric_check(r.L, r.M, r.T, probes, Grid1D{1.0, 2.0, 33});
  CHECK(ok.max_abs <= 1e-10);

  // Breaking T destroys the identity at O(1).
  ResidualReport broken = intertwine_numeric_check(r.L, r.M, DiffOp::d(), probes, Grid1D{1.0, 2.0, 33});
  CHECK(broken.max_abs > 0.1);

  // L = M with the identity transform is exactly intertwined.
  ResidualReport trivial =
      intertwine_numeric_check(r.L, r.L, DiffOp::identity(), probes, Grid1D{1.0, 2.0, 33});
  CHECK(trivial.max_abs == 0.0);
}
