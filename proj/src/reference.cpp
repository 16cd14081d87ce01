#include "wavegal/reference.hpp"

#include <algorithm>
#include <cmath>

namespace wavegal {

UniformGridField UniformGridField::zeros(int n) {
  if (n < 3) throw ValidationError("reference grid needs n >= 3 nodes per axis");
  UniformGridField f;
  f.n = n;
  f.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  return f;
}

namespace {

// Node-centered finite-volume discretization shared by the steady and
// transient drivers. Control volumes shrink to halves/quarters on the
// boundary, which keeps the operator symmetric.
struct FdSystem {
  int n;     // cells per axis = nodes - 1
  double h;
  const ProblemDefinition* problem;
  std::vector<int> eq_of;          // node -> equation ordinal, -1 for Dirichlet
  std::vector<int> node_of;        // equation ordinal -> node
  SparseMatrix stiffness;          // over free nodes
  std::vector<double> mass_diag;   // control-volume rho c_p
  // Couplings of free equations to Dirichlet nodes: rhs += coef * T_b(node).
  struct BoundaryCoupling {
    int eq;
    int node;
    double coef;
  };
  std::vector<BoundaryCoupling> couplings;
  // Robin T_inf and Neumann data contributions evaluated per time.
  struct EdgeLoad {
    int eq;
    double px, py;  // evaluation point on the edge
    double scale;   // face length (times h_R for Robin)
    bool robin;
    int edge;
  };
  std::vector<EdgeLoad> edge_loads;

  int node(int ix, int iy) const { return ix * (n + 1) + iy; }

  double dirichlet_value(int ix, int iy, double t) const;
  std::vector<double> rhs_at(double t) const;
};

bool edge_is_dirichlet(const BoundarySpec& bc, Edge e) {
  return bc.on(e).kind == BcKind::Dirichlet;
}

double FdSystem::dirichlet_value(int ix, int iy, double t) const {
  const BoundarySpec& bc = problem->boundary;
  const double x = ix * h, y = iy * h;
  double acc = 0.0;
  int cnt = 0;
  auto take = [&](Edge e) {
    if (edge_is_dirichlet(bc, e)) {
      acc += bc.on(e).data(x, y, t);
      ++cnt;
    }
  };
  if (iy == 0) take(Edge::Bottom);
  if (iy == n) take(Edge::Top);
  if (ix == 0) take(Edge::Left);
  if (ix == n) take(Edge::Right);
  return cnt > 0 ? acc / cnt : 0.0;
}

FdSystem build_fd_system(const ProblemDefinition& problem, int nodes) {
  if (nodes < 17) throw ValidationError("fd reference needs n >= 17 nodes per axis");
  problem.validate();
  FdSystem s;
  s.n = nodes - 1;
  s.h = 1.0 / s.n;
  s.problem = &problem;
  const BoundarySpec& bc = problem.boundary;
  const MaterialMap& mat = problem.material;
  const int n = s.n;
  const int np = n + 1;
  s.eq_of.assign(static_cast<std::size_t>(np) * np, -1);

  auto is_dirichlet_node = [&](int ix, int iy) {
    return (iy == 0 && edge_is_dirichlet(bc, Edge::Bottom)) ||
           (iy == n && edge_is_dirichlet(bc, Edge::Top)) ||
           (ix == 0 && edge_is_dirichlet(bc, Edge::Left)) ||
           (ix == n && edge_is_dirichlet(bc, Edge::Right));
  };
  for (int ix = 0; ix < np; ++ix)
    for (int iy = 0; iy < np; ++iy)
      if (!is_dirichlet_node(ix, iy)) {
        s.eq_of[s.node(ix, iy)] = static_cast<int>(s.node_of.size());
        s.node_of.push_back(s.node(ix, iy));
      }

  const double h = s.h;
  auto cw = [&](int i) { return (i == 0 || i == n) ? 0.5 : 1.0; };  // control width / h
  auto hmean = [](double a, double b) { return 2.0 * a * b / (a + b); };

  const int nf = static_cast<int>(s.node_of.size());
  if (nf == 0) throw OracleError("reference grid has no free nodes");
  s.mass_diag.assign(nf, 0.0);
  SparseMatrix::Builder kb(nf);

  for (int eq = 0; eq < nf; ++eq) {
    const int nd = s.node_of[eq];
    const int ix = nd / np, iy = nd % np;
    const double x = ix * h, y = iy * h;
    s.mass_diag[eq] = mat.rho_cp_at(x, y) * cw(ix) * cw(iy) * h * h;

    struct Nb {
      int dx, dy;
    };
    const Nb nbs[4] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
    double diag = 0.0;
    std::vector<std::pair<int, double>> offdiag;
    for (const Nb& nb : nbs) {
      const int jx = ix + nb.dx, jy = iy + nb.dy;
      if (jx < 0 || jx > n || jy < 0 || jy > n) continue;
      const ConductivityTensor ka = mat.conductivity_at(x, y);
      const ConductivityTensor kb2 = mat.conductivity_at(jx * h, jy * h);
      const double kf = nb.dx != 0 ? hmean(ka.kxx, kb2.kxx) : hmean(ka.kyy, kb2.kyy);
      const double wperp = nb.dx != 0 ? cw(iy) : cw(ix);
      const double t = kf * wperp;  // / h * h (face length h * wperp over distance h)
      diag += t;
      const int jeq = s.eq_of[s.node(jx, jy)];
      if (jeq >= 0) {
        offdiag.emplace_back(jeq, -t);
      } else {
        s.couplings.push_back({eq, s.node(jx, jy), t});
      }
    }
    // Robin faces stiffen the diagonal; Neumann/Robin data enter the rhs.
    auto edge_face = [&](Edge e, double px, double py, double wtan) {
      const EdgeCondition& ec = bc.on(e);
      if (ec.kind == BcKind::Neumann) {
        if (ec.data) s.edge_loads.push_back({eq, px, py, wtan * h, false, static_cast<int>(e)});
      } else if (ec.kind == BcKind::Robin) {
        if (ec.robin_h < 0.0) throw ValidationError("Robin coefficient h must be >= 0");
        if (ec.robin_h > 0.0) {
          diag += ec.robin_h * wtan * h;
          s.edge_loads.push_back({eq, px, py, ec.robin_h * wtan * h, true, static_cast<int>(e)});
        }
      }
    };
    if (iy == 0) edge_face(Edge::Bottom, x, 0.0, cw(ix));
    if (iy == n) edge_face(Edge::Top, x, 1.0, cw(ix));
    if (ix == 0) edge_face(Edge::Left, 0.0, y, cw(iy));
    if (ix == n) edge_face(Edge::Right, 1.0, y, cw(iy));

    offdiag.emplace_back(eq, diag);
    std::sort(offdiag.begin(), offdiag.end());
    for (const auto& [c, v] : offdiag) kb.add(eq, c, v);
  }
  s.stiffness = kb.finish();
  return s;
}

std::vector<double> FdSystem::rhs_at(double t) const {
  const int nf = static_cast<int>(node_of.size());
  std::vector<double> rhs(nf, 0.0);
  const int np = n + 1;
  if (problem->source) {
    auto cw = [&](int i) { return (i == 0 || i == n) ? 0.5 : 1.0; };
    for (int eq = 0; eq < nf; ++eq) {
      const int nd = node_of[eq];
      const int ix = nd / np, iy = nd % np;
      rhs[eq] += problem->source(ix * h, iy * h, t) * cw(ix) * cw(iy) * h * h;
    }
  }
  for (const auto& c : couplings) {
    const int ix = c.node / np, iy = c.node % np;
    rhs[c.eq] += c.coef * dirichlet_value(ix, iy, t);
  }
  for (const auto& el : edge_loads) {
    const EdgeCondition& ec = problem->boundary.edges[el.edge];
    rhs[el.eq] += el.robin ? el.scale * ec.robin_t_inf(el.px, el.py, t)
                           : el.scale * ec.data(el.px, el.py, t);
  }
  return rhs;
}

UniformGridField to_field(const FdSystem& s, const std::vector<double>& free_vals, double t) {
  UniformGridField f = UniformGridField::zeros(s.n + 1);
  const int np = s.n + 1;
  for (int ix = 0; ix < np; ++ix)
    for (int iy = 0; iy < np; ++iy) {
      const int eq = s.eq_of[s.node(ix, iy)];
      f.at(ix, iy) = eq >= 0 ? free_vals[eq] : s.dirichlet_value(ix, iy, t);
    }
  return f;
}

}  // namespace

UniformGridField fd_solve_transient(const ProblemDefinition& problem, int n, double dt,
                                    int steps) {
  if (dt <= 0.0 || steps < 1) throw ValidationError("fd transient needs dt > 0 and steps >= 1");
  FdSystem s = build_fd_system(problem, n);
  const int nf = static_cast<int>(s.node_of.size());
  const int np = s.n + 1;
  std::vector<double> u(nf, 0.0);
  for (int eq = 0; eq < nf; ++eq) {
    const int nd = s.node_of[eq];
    if (problem.initial) u[eq] = problem.initial((nd / np) * s.h, (nd % np) * s.h);
  }
  // A = M + dt K with diagonal (lumped) mass.
  SparseMatrix a = s.stiffness;
  {
    SparseMatrix::Builder b(nf);
    for (int i = 0; i < nf; ++i) {
      for (int p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p) {
        double v = dt * a.values()[p];
        if (a.cols()[p] == i) v += s.mass_diag[i];
        b.add(i, a.cols()[p], v);
      }
    }
    a = b.finish();
  }
  PcgConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.max_iter = 200 * std::max(nf, 1);
  double t = 0.0;
  for (int step = 1; step <= steps; ++step) {
    t = step * dt;
    std::vector<double> rhs = s.rhs_at(t);
    for (int i = 0; i < nf; ++i) rhs[i] = s.mass_diag[i] * u[i] + dt * rhs[i];
    pcg_solve(a, rhs, u, cfg);
  }
  return to_field(s, u, t);
}

UniformGridField fd_solve_steady(const ProblemDefinition& problem, int n) {
  const BoundarySpec& bc = problem.boundary;
  bool anchored = !bc.dirichlet_edges().empty();
  for (const auto& ec : bc.edges)
    if (ec.kind == BcKind::Robin && ec.robin_h > 0.0) anchored = true;
  if (!anchored) throw OracleError("steady reference problem is singular (no Dirichlet/Robin)");
  FdSystem s = build_fd_system(problem, n);
  const int nf = static_cast<int>(s.node_of.size());
  std::vector<double> u(nf, 0.0);
  PcgConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.max_iter = 400 * std::max(nf, 1);
  const double t = problem.t_final;
  std::vector<double> rhs = s.rhs_at(t);
  pcg_solve(s.stiffness, rhs, u, cfg);
  return to_field(s, u, t);
}

double analytic_slab_steady(double y, double k1, double k2, double interface_y) {
  if (k1 <= 0.0 || k2 <= 0.0) throw ValidationError("slab conductivities must be > 0");
  if (interface_y <= 0.0 || interface_y >= 1.0)
    throw ValidationError("slab interface must lie inside (0,1)");
  const double q = 1.0 / (interface_y / k1 + (1.0 - interface_y) / k2);
  if (y <= interface_y) return 1.0 - q * y / k1;
  return q * (1.0 - y) / k2;
}

double analytic_fgm_steady(double y, double km, double alpha, double y0) {
  if (km <= 0.0) throw ValidationError("fgm base conductivity must be > 0");
  if (1.0 + alpha * (2.0 * y0 - 1.0) <= 0.0 || 1.0 + alpha <= 0.0)
    throw ValidationError("fgm grading makes conductivity non-positive");
  auto resistance = [&](double yy) {
    if (yy <= y0) return yy / km;
    if (alpha == 0.0) return yy / km;
    const double lo = 1.0 + alpha * (2.0 * y0 - 1.0);
    const double hi = 1.0 + alpha * (2.0 * yy - 1.0);
    return y0 / km + (std::log(hi) - std::log(lo)) / (2.0 * alpha * km);
  };
  return 1.0 - resistance(y) / resistance(1.0);
}

UniformGridField sample_wavelet_solution(const TransientSolution& sol, const DyadicTable& table,
                                         int n) {
  int finest = 0;
  for (const auto& idx : sol.final_set.items())
    if (idx.kind == Kind::Wavelet) finest = std::max(finest, idx.level + 1);
  if (n - 1 < (1 << finest))
    throw ResolutionError("reference grid coarser than the finest active level");
  UniformGridField f = UniformGridField::zeros(n);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) f.at(ix, iy) = sol.evaluate(table, f.x(ix), f.y(iy));
  return f;
}

ErrorNorms error_norms(const UniformGridField& a, const UniformGridField& b) {
  if (a.n != b.n) throw DimensionError("error norms need matching grids");
  const int n = a.n - 1;  // cells
  const double h = a.h();
  double l2 = 0.0, h1 = 0.0;
  auto d = [&](int ix, int iy) { return a.at(ix, iy) - b.at(ix, iy); };
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double mid =
          0.25 * (d(ix, iy) + d(ix + 1, iy) + d(ix, iy + 1) + d(ix + 1, iy + 1));
      l2 += mid * mid * h * h;
      const double gx = 0.5 * (d(ix + 1, iy) + d(ix + 1, iy + 1) - d(ix, iy) - d(ix, iy + 1)) / h;
      const double gy = 0.5 * (d(ix, iy + 1) + d(ix + 1, iy + 1) - d(ix, iy) - d(ix + 1, iy)) / h;
      h1 += (gx * gx + gy * gy) * h * h;
    }
  return {std::sqrt(l2), std::sqrt(h1)};
}

}  // namespace wavegal
