#pragma once

#include <optional>
#include <vector>

#include "forge/diffop.hpp"
#include "forge/kleingordon.hpp"

namespace forge {

struct Grid1D {
  double start = 0.0;
  double end = 1.0;
  int n = 3;  // point count, >= 3

  double spacing() const { return (end - start) / (n - 1); }
  double point(int i) const { return start + spacing() * i; }
};

struct ResidualReport {
  double max_abs = 0.0;
  double rms = 0.0;
  int skipped = 0;
  int evaluated = 0;
  std::vector<double> spacings;  // grid spacing per dimension
  std::optional<double> convergence_order;
};

/// Pointwise |sum coeffs[i] * f^(i)(x)| on the grid, using exact symbolic
/// derivatives of f and numeric evaluation. Singular points are skipped and
/// counted; more than 20% skipped raises Error(TooManySkipped).
ResidualReport ode_residual(const std::vector<Expr>& coeffs, const Expr& f, const Grid1D& grid,
                            unsigned precision = 30);

struct Rk4Sample {
  double x;
  double value;
  double derivative;
};

/// Classical fixed-step RK4 for a2 f'' + a1 f' + a0 f = 0 as a first-order
/// system. Raises Error(SingularLeadingCoefficient) when a2 vanishes on the
/// interval.
std::vector<Rk4Sample> rk4_solve(const Expr& a2, const Expr& a1, const Expr& a0, double x0,
                                 double x1, double f0, double df0, double step);

/// Central second differences on interior nodes: |D_tt v - D_xx v - W v|.
/// The field is evaluated exactly at the nodes, so the residual is pure
/// discretization error, O(spacing^2) for smooth solutions.
ResidualReport pde_fd_residual(const SolutionField& v, const Expr& W, const Grid1D& t_grid,
                               const Grid1D& x_grid, unsigned precision = 30);

/// log2(max_coarse / max_fine); requires the fine grid to halve the coarse
/// spacing in every dimension. Raises Error(DegenerateResidual) with message
/// "exact" when either residual sits below 100x the double-precision noise
/// floor.
double convergence_order(const ResidualReport& coarse, const ResidualReport& fine);

/// Max over probes u and grid points of |(M∘T - T∘L)(u)| evaluated
/// numerically; independent of the sampling-based zero test.
ResidualReport intertwine_numeric_check(const DiffOp& L, const DiffOp& M, const DiffOp& T,
                                        const std::vector<Expr>& probes, const Grid1D& grid,
                                        unsigned precision = 30);

}  // namespace forge
