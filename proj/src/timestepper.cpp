#include "wavegal/timestepper.hpp"

#include <chrono>
#include <cmath>

namespace wavegal {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

PcgResult pcg_solve(const SparseMatrix& a, const std::vector<double>& b, std::vector<double>& x,
                    const PcgConfig& cfg) {
  const int n = a.dim();
  if (static_cast<int>(b.size()) != n) throw DimensionError("pcg right-hand side size mismatch");
  if (static_cast<int>(x.size()) != n) x.assign(n, 0.0);
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 10 * std::max(n, 1);

  // Both preconditioner options reduce to diagonal scaling; the diagonal of
  // the multiscale operator already carries the 4^j level weights.
  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) d = d > 0.0 ? 1.0 / d : 1.0;

  const double bnorm = norm2(b);
  PcgResult res;
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    res.converged = true;
    return res;
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  a.multiply(x, ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  std::vector<double> history;
  history.push_back(norm2(r) / bnorm);
  if (history.back() <= cfg.rel_tol) {
    res.converged = true;
    res.residual = history.back();
    return res;
  }

  for (int it = 1; it <= max_iter; ++it) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) throw MatrixError("pcg encountered a non-SPD operator");
    const double alpha = rz / pap;
    for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
    const double rel = norm2(r) / bnorm;
    history.push_back(rel);
    if (rel <= cfg.rel_tol) {
      res.iterations = it;
      res.residual = rel;
      res.converged = true;
      return res;
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw ConvergenceError("pcg failed to converge within the iteration cap", std::move(history));
}

PcgResult backward_euler_step(const SparseMatrix& mass, const SparseMatrix& stiffness, double dt,
                              const std::vector<double>& u0, const std::vector<double>& load,
                              std::vector<double>& u1, const PcgConfig& cfg) {
  if (dt <= 0.0) throw ValidationError("dt must be > 0");
  const SparseMatrix a = mass.add_scaled(stiffness, dt);
  std::vector<double> rhs = mass.multiply(u0);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += dt * load[i];
  u1 = u0;  // warm start
  return pcg_solve(a, rhs, u1, cfg);
}

double TransientSolution::evaluate(const DyadicTable& table, double x, double y) const {
  return evaluate_expansion(final_coeffs, final_set, table, x, y) + lifting.value(x, y, t_final);
}

TransientSolution run_transient(const ProblemDefinition& problem, const DyadicTable& table,
                                const TransientOptions& options) {
  problem.validate();
  options.grid.validate();
  options.policy.validate();
  const AdaptivityPolicy& policy = options.policy;
  const BasisFamily& fam = table.family;

  const IndexSet full =
      full_index_set(policy.max_level_J, fam, problem.boundary.dirichlet_edges());
  const LiftingField lifting = build_lifting(problem);
  auto u0_hom = [&](double x, double y) {
    const double u = problem.initial ? problem.initial(x, y) : 0.0;
    return u - lifting.value(x, y, 0.0);
  };

  IndexSet active = policy.enabled ? initial_active_set(u0_hom, full, table, policy)
                                   : full;
  std::vector<double> coeffs = project_function(u0_hom, active, table, options.quad_depth);

  QuadratureRule quad;
  quad.base_level = policy.max_level_J;
  quad.depth = options.quad_depth;
  quad.rule = options.quad_rule;
  quad.drop_tolerance = options.drop_tolerance;

  const bool data_time_dep =
      problem.source.time_dependent || lifting.time_dependent() ||
      [&] {
        for (const auto& ec : problem.boundary.edges)
          if (ec.data.time_dependent || ec.robin_t_inf.time_dependent) return true;
        return false;
      }();

  TransientSolution sol;
  sol.lifting = lifting;

  SparseMatrix mass, stiffness, system;
  std::vector<double> load;
  bool have_matrices = false, have_load = false;

  const double dt = options.grid.dt;
  for (int n = 1; n <= options.grid.steps; ++n) {
    const auto t_start = std::chrono::steady_clock::now();
    const double t1 = options.grid.at(n);
    bool set_changed = false;
    if (policy.enabled && (n - 1) % policy.stride == 0) {
      const auto marked = mark_essential(coeffs, active, policy);
      IndexSet next = expand_neighborhood(marked, full, fam, policy);
      if (next.items() != active.items()) {
        coeffs = transfer_coefficients(coeffs, active, next);
        active = std::move(next);
        set_changed = true;
      }
    }
    if (!have_matrices || set_changed) {
      mass = assemble_mass(active, problem, table, quad);
      stiffness = assemble_stiffness(active, problem, table, quad);
      system = mass.add_scaled(stiffness, dt);
      have_matrices = true;
      have_load = false;
    }
    if (!have_load || data_time_dep) {
      load = assemble_load(active, problem, table, quad, t1, lifting);
      have_load = true;
    }
    std::vector<double> rhs = mass.multiply(coeffs);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += dt * load[i];
    std::vector<double> u1 = coeffs;  // warm start
    const PcgResult pcg = pcg_solve(system, rhs, u1, options.pcg);
    coeffs = std::move(u1);

    StepDiagnostics d;
    d.step = n;
    d.t = t1;
    d.active_dofs = active.size();
    d.pcg_iters = pcg.iterations;
    d.pcg_residual = pcg.residual;
    d.reused_matrices = !set_changed && n > 1;
    d.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          t_start)
                    .count();
    sol.diagnostics.push_back(d);
    if (options.record_sets) sol.sets_per_step.push_back(active);
  }

  sol.final_set = std::move(active);
  sol.final_coeffs = std::move(coeffs);
  sol.t_final = options.grid.at(options.grid.steps);
  return sol;
}

}  // namespace wavegal
