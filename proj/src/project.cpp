#include <cmath>
#include <vector>

#include "wavegal/timestepper.hpp"

namespace wavegal {

namespace {

int sampling_level(const IndexSet& set) {
  int J = 0;
  for (const auto& idx : set.items())
    if (idx.kind == Kind::Wavelet) J = std::max(J, idx.level + 1);
  return J;
}

// Exact 2-D hierarchical interpolation: nodal values on the dyadic grid of
// V_J, detail surpluses level by level, cross corrections on the diagonal
// component. Exactly reproduces any function in the span of the set whose
// surpluses vanish outside it.
std::vector<double> project_hat(const std::function<double(double, double)>& f,
                                const IndexSet& set) {
  const int J = sampling_level(set);
  const int N = 1 << J;
  const double h = 1.0 / N;
  std::vector<double> v(static_cast<std::size_t>(N + 1) * (N + 1));
  auto at = [&](int ix, int iy) -> double& { return v[static_cast<std::size_t>(ix) * (N + 1) + iy]; };
  for (int ix = 0; ix <= N; ++ix)
    for (int iy = 0; iy <= N; ++iy) at(ix, iy) = f(ix * h, iy * h);

  std::vector<double> out(set.size(), 0.0);
  auto assign = [&](const WaveletIndex& idx, double value) {
    const int o = set.ordinal_of(idx);
    if (o >= 0) out[o] = value;
  };

  // Level-0 scaling = bilinear corner interpolant.
  for (int kx = -1; kx <= 0; ++kx)
    for (int ky = -1; ky <= 0; ++ky)
      assign({0, Kind::Scaling, Orientation::None, kx, ky}, at((kx + 1) * N, (ky + 1) * N));

  for (int j = 0; j < J; ++j) {
    const int S = N >> j;       // coarse node stride
    const int sx = S >> 1;      // surplus node offset
    const int nw = 1 << j;      // wavelets per axis
    const double norm = std::ldexp(1.0, -j);
    // Horizontal surpluses a(kx, ky): odd x node, coarse y node.
    std::vector<std::vector<double>> a(nw, std::vector<double>(nw + 1));
    for (int kx = 0; kx < nw; ++kx)
      for (int ky = -1; ky < nw; ++ky) {
        const int ox = kx * S + sx, ey = (ky + 1) * S;
        a[kx][ky + 1] = at(ox, ey) - 0.5 * (at(ox - sx, ey) + at(ox + sx, ey));
        assign({j, Kind::Wavelet, Orientation::Horizontal, kx, ky}, a[kx][ky + 1] * norm);
      }
    // Vertical surpluses b(kx, ky): coarse x node, odd y node.
    std::vector<std::vector<double>> b(nw + 1, std::vector<double>(nw));
    for (int kx = -1; kx < nw; ++kx)
      for (int ky = 0; ky < nw; ++ky) {
        const int ex = (kx + 1) * S, oy = ky * S + sx;
        b[kx + 1][ky] = at(ex, oy) - 0.5 * (at(ex, oy - sx) + at(ex, oy + sx));
        assign({j, Kind::Wavelet, Orientation::Vertical, kx, ky}, b[kx + 1][ky] * norm);
      }
    // Diagonal: surplus at the odd-odd node minus what the H/V components of
    // this level already contribute there.
    for (int kx = 0; kx < nw; ++kx)
      for (int ky = 0; ky < nw; ++ky) {
        const int ox = kx * S + sx, oy = ky * S + sx;
        const double d = at(ox, oy) - 0.25 * (at(ox - sx, oy - sx) + at(ox + sx, oy - sx) +
                                              at(ox - sx, oy + sx) + at(ox + sx, oy + sx));
        const double c = d - 0.5 * (a[kx][ky] + a[kx][ky + 1]) - 0.5 * (b[kx][ky] + b[kx + 1][ky]);
        assign({j, Kind::Wavelet, Orientation::Diagonal, kx, ky}, c * norm);
      }
  }
  return out;
}

// Discrete Galerkin projection: Gram system from the quadrature inner
// product, right-hand side by the same composite rule, PCG solve.
std::vector<double> project_orthogonal(const std::function<double(double, double)>& f,
                                       const IndexSet& set, const DyadicTable& table,
                                       int quad_depth) {
  QuadratureRule quad;
  quad.base_level = std::max(1, sampling_level(set));
  quad.depth = quad_depth;
  ProblemDefinition unit;  // rho c_p = 1, K = I, all-Neumann
  const SparseMatrix gram = assemble_mass(set, unit, table, quad);

  const double h = quad.spacing();
  const int cells = quad.cells();
  std::vector<double> rhs(set.size(), 0.0);
  for (int i = 0; i < set.size(); ++i) {
    const auto sup = support2d(table.family, set[i]);
    const int x0 = std::max(0, static_cast<int>(std::floor(sup[0].lo / h + 1e-9)));
    const int x1 = std::min(cells, static_cast<int>(std::ceil(sup[0].hi / h - 1e-9)));
    const int y0 = std::max(0, static_cast<int>(std::floor(sup[1].lo / h + 1e-9)));
    const int y1 = std::min(cells, static_cast<int>(std::ceil(sup[1].hi / h - 1e-9)));
    double acc = 0.0;
    for (int cy = y0; cy < y1; ++cy) {
      const double y = (cy + 0.5) * h;
      for (int cx = x0; cx < x1; ++cx) {
        const double x = (cx + 0.5) * h;
        acc += f(x, y) * evaluate_basis_function(set[i], table, x, y);
      }
    }
    rhs[i] = acc * h * h;
  }

  std::vector<double> coeffs(set.size(), 0.0);
  PcgConfig cfg;
  cfg.rel_tol = 1e-12;
  pcg_solve(gram, rhs, coeffs, cfg);
  return coeffs;
}

}  // namespace

std::vector<double> project_function(const std::function<double(double, double)>& f,
                                     const IndexSet& set, const DyadicTable& table,
                                     int quad_depth) {
  if (!f) throw ValidationError("cannot project a null function");
  if (set.size() == 0) throw ValidationError("cannot project onto an empty index set");
  if (table.family.tag == Family::HierarchicalHat) return project_hat(f, set);
  return project_orthogonal(f, set, table, quad_depth);
}

}  // namespace wavegal
