#pragma once

#include <vector>

#include "wavegal/adaptivity.hpp"
#include "wavegal/assembly.hpp"
#include "wavegal/sparse.hpp"

namespace wavegal {

enum class Precond { Jacobi, LevelScaled };

struct PcgConfig {
  double rel_tol = 1e-10;
  int max_iter = 0;  // 0 -> 10 n
  Precond precond = Precond::Jacobi;
};

struct PcgResult {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Preconditioned conjugate gradients with deterministic ascending-ordinal
// reductions. Throws ConvergenceError (with the residual history attached)
// when the iteration cap is reached.
PcgResult pcg_solve(const SparseMatrix& a, const std::vector<double>& b, std::vector<double>& x,
                    const PcgConfig& cfg);

struct TimeGrid {
  double dt = 1e-2;
  int steps = 10;

  void validate() const {
    if (dt <= 0.0) throw ValidationError("dt must be > 0");
    if (steps < 1) throw ValidationError("step count must be >= 1");
  }
  double at(int n) const { return n * dt; }
};

// One backward Euler step: (M + dt K) u1 = M u0 + dt f.
PcgResult backward_euler_step(const SparseMatrix& mass, const SparseMatrix& stiffness, double dt,
                              const std::vector<double>& u0, const std::vector<double>& load,
                              std::vector<double>& u1, const PcgConfig& cfg);

struct StepDiagnostics {
  int step = 0;
  double t = 0.0;
  int active_dofs = 0;
  int pcg_iters = 0;
  double pcg_residual = 0.0;
  double wall_ms = 0.0;
  bool reused_matrices = false;
};

struct TransientSolution {
  IndexSet final_set;
  std::vector<double> final_coeffs;
  LiftingField lifting;
  double t_final = 0.0;
  std::vector<StepDiagnostics> diagnostics;
  std::vector<IndexSet> sets_per_step;  // set in force during each step

  // Physical temperature (expansion plus lifting) at the final time.
  double evaluate(const DyadicTable& table, double x, double y) const;
};

struct TransientOptions {
  TimeGrid grid;
  PcgConfig pcg;
  AdaptivityPolicy policy;
  QuadRule quad_rule = QuadRule::Midpoint;
  int quad_depth = 2;
  double drop_tolerance = 0.0;
  bool record_sets = true;
};

// Adaptive backward Euler driver: mark / expand / transfer / assemble (with
// reuse when the active set is unchanged) / solve, per step.
TransientSolution run_transient(const ProblemDefinition& problem, const DyadicTable& table,
                                const TransientOptions& options);

}  // namespace wavegal
