#pragma once

#include <vector>

#include "wavegal/problem.hpp"
#include "wavegal/timestepper.hpp"

namespace wavegal {

// n x n nodal values on the uniform grid of spacing 1/(n-1) over the unit
// square. Odd n places y = 1/2 on a grid line.
struct UniformGridField {
  int n = 0;  // nodes per axis
  std::vector<double> values;  // row-major, index ix * n + iy

  double h() const { return 1.0 / (n - 1); }
  double& at(int ix, int iy) { return values[static_cast<std::size_t>(ix) * n + iy]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * n + iy]; }
  double x(int ix) const { return ix * h(); }
  double y(int iy) const { return iy * h(); }

  static UniformGridField zeros(int n);
};

// Backward Euler / 5-point finite differences with harmonic-mean face
// conductivities. Dirichlet rows are eliminated; Neumann and Robin edges use
// mirror ghosts.
UniformGridField fd_solve_transient(const ProblemDefinition& problem, int n, double dt, int steps);

// Stationary limit of the same discretization.
UniformGridField fd_solve_steady(const ProblemDefinition& problem, int n);

// Steady 1-D slab profile: unit Dirichlet drop across two layers meeting at
// interface_y.
double analytic_slab_steady(double y, double k1, double k2, double interface_y);

// Steady profile through a graded layer k(y) = km (1 + alpha (2y - 1)) above
// y0, constant km below, via the resistance integral.
double analytic_fgm_steady(double y, double km, double alpha, double y0);

// Physical wavelet solution sampled on the reference grid. Throws
// ResolutionError when the grid cannot resolve the finest active level.
UniformGridField sample_wavelet_solution(const TransientSolution& sol, const DyadicTable& table,
                                         int n);

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

// Cell-midpoint L2 and centered-difference H1 seminorm of a - b.
ErrorNorms error_norms(const UniformGridField& a, const UniformGridField& b);

}  // namespace wavegal
