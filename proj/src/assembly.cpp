#include "wavegal/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace wavegal {

namespace {

constexpr double kGauss = 0.28867513459481287;  // 1/(2 sqrt 3)

// 1-D tensor factor of a basis function.
struct Fn1D {
  bool wavelet = false;
  int j = 0;
  int k = 0;
};

Fn1D factor_of(const WaveletIndex& idx, int axis) {
  Fn1D f;
  f.j = idx.level;
  f.k = axis == 0 ? idx.kx : idx.ky;
  if (idx.kind == Kind::Scaling) {
    f.wavelet = false;
  } else {
    const bool x_wave = idx.orientation == Orientation::Horizontal ||
                        idx.orientation == Orientation::Diagonal;
    const bool y_wave = idx.orientation == Orientation::Vertical ||
                        idx.orientation == Orientation::Diagonal;
    f.wavelet = axis == 0 ? x_wave : y_wave;
  }
  return f;
}

// Packed memo key for 1-D pair integrals: factors, derivative flags, weight id.
std::int64_t pair_key(const Fn1D& a, int da, const Fn1D& b, int db, int weight_id) {
  auto one = [](const Fn1D& f, int d) -> std::int64_t {
    return (static_cast<std::int64_t>(f.k + 4096) << 6) | (static_cast<std::int64_t>(f.j) << 2) |
           (static_cast<std::int64_t>(f.wavelet) << 1) | static_cast<std::int64_t>(d);
  };
  return (one(a, da) << 25) | (one(b, db) << 4) | static_cast<std::int64_t>(weight_id);
}

struct QuadPoints {
  // Per-cell abscissa offsets (fractions of h) and weights (fractions of h).
  int count;
  std::array<double, 2> off;
  std::array<double, 2> w;
};

QuadPoints points_for(QuadRule r) {
  if (r == QuadRule::Midpoint) return {1, {0.5, 0.0}, {1.0, 0.0}};
  return {2, {0.5 - kGauss, 0.5 + kGauss}, {0.5, 0.5}};
}

struct CellRange {
  int i0, i1;  // half-open cell range
};

CellRange cell_range(double lo, double hi, const QuadratureRule& quad) {
  const double h = quad.spacing();
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (hi <= lo) return {0, 0};
  const int i0 = static_cast<int>(std::floor(lo / h + 1e-9));
  const int i1 = static_cast<int>(std::ceil(hi / h - 1e-9));
  return {std::max(i0, 0), std::min(i1, quad.cells())};
}

using Weight1D = std::function<double(double)>;

double integrate_pair_1d(const DyadicTable& table, const Fn1D& a, int da, const Fn1D& b, int db,
                         const Weight1D* weight, const QuadratureRule& quad) {
  const Support1D sa = support1d(table.family, a.wavelet, a.j, a.k);
  const Support1D sb = support1d(table.family, b.wavelet, b.j, b.k);
  const CellRange r = cell_range(std::max(sa.lo, sb.lo), std::min(sa.hi, sb.hi), quad);
  if (r.i1 <= r.i0) return 0.0;
  const double h = quad.spacing();
  const QuadPoints qp = points_for(quad.rule);
  auto eval = [&table](const Fn1D& f, int d, double x) {
    return d ? table.deriv1d(f.wavelet, f.j, f.k, x) : table.eval1d(f.wavelet, f.j, f.k, x);
  };
  double acc = 0.0;
  for (int i = r.i0; i < r.i1; ++i) {
    const double base = i * h;
    for (int p = 0; p < qp.count; ++p) {
      const double x = base + qp.off[p] * h;
      double v = eval(a, da, x) * eval(b, db, x);
      if (weight) v *= (*weight)(x);
      acc += qp.w[p] * h * v;
    }
  }
  return acc;
}

// Memoizing wrapper; the cache lives for one assembly pass.
class PairCache {
public:
  PairCache(const DyadicTable& table, const QuadratureRule& quad) : table_(table), quad_(quad) {}

  double get(const Fn1D& a, int da, const Fn1D& b, int db, int weight_id,
             const Weight1D* weight) {
    const std::int64_t key = pair_key(a, da, b, db, weight_id);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const double v = integrate_pair_1d(table_, a, da, b, db, weight, quad_);
    memo_.emplace(key, v);
    return v;
  }

private:
  const DyadicTable& table_;
  const QuadratureRule& quad_;
  std::unordered_map<std::int64_t, double> memo_;
};

// Tabulated 1-D values of one factor at every quadrature abscissa of a cell
// range, for the generic 2-D path.
struct AxisSamples {
  CellRange range;
  int per_cell;
  std::vector<double> coord, val, dval, wgt;
};

AxisSamples sample_axis(const DyadicTable& table, const Fn1D& f, double lo, double hi,
                        const QuadratureRule& quad) {
  AxisSamples s;
  s.range = cell_range(lo, hi, quad);
  const QuadPoints qp = points_for(quad.rule);
  s.per_cell = qp.count;
  const double h = quad.spacing();
  for (int i = s.range.i0; i < s.range.i1; ++i)
    for (int p = 0; p < qp.count; ++p) {
      const double x = i * h + qp.off[p] * h;
      s.coord.push_back(x);
      s.val.push_back(table.eval1d(f.wavelet, f.j, f.k, x));
      s.dval.push_back(table.deriv1d(f.wavelet, f.j, f.k, x));
      s.wgt.push_back(qp.w[p] * h);
    }
  return s;
}

struct Entry2DContext {
  const DyadicTable& table;
  const MaterialMap& material;
  const QuadratureRule& quad;
};

// Generic tensor-product quadrature of the mass integrand over the support
// intersection of two basis functions.
double mass_entry_generic(const Entry2DContext& c, const WaveletIndex& l1,
                          const WaveletIndex& l2) {
  const auto s1 = support2d(c.table.family, l1);
  const auto s2 = support2d(c.table.family, l2);
  const AxisSamples ax1 = sample_axis(c.table, factor_of(l1, 0), std::max(s1[0].lo, s2[0].lo),
                                      std::min(s1[0].hi, s2[0].hi), c.quad);
  if (ax1.coord.empty()) return 0.0;
  const AxisSamples ax2 = sample_axis(c.table, factor_of(l2, 0), std::max(s1[0].lo, s2[0].lo),
                                      std::min(s1[0].hi, s2[0].hi), c.quad);
  const AxisSamples ay1 = sample_axis(c.table, factor_of(l1, 1), std::max(s1[1].lo, s2[1].lo),
                                      std::min(s1[1].hi, s2[1].hi), c.quad);
  if (ay1.coord.empty()) return 0.0;
  const AxisSamples ay2 = sample_axis(c.table, factor_of(l2, 1), std::max(s1[1].lo, s2[1].lo),
                                      std::min(s1[1].hi, s2[1].hi), c.quad);
  double acc = 0.0;
  for (std::size_t iy = 0; iy < ay1.coord.size(); ++iy) {
    const double y = ay1.coord[iy];
    const double fy = ay1.val[iy] * ay2.val[iy] * ay1.wgt[iy];
    if (fy == 0.0) continue;
    for (std::size_t ix = 0; ix < ax1.coord.size(); ++ix) {
      const double fx = ax1.val[ix] * ax2.val[ix] * ax1.wgt[ix];
      if (fx == 0.0) continue;
      acc += c.material.rho_cp_at(ax1.coord[ix], y) * fx * fy;
    }
  }
  return acc;
}

double stiffness_entry_generic(const Entry2DContext& c, const WaveletIndex& l1,
                               const WaveletIndex& l2) {
  const auto s1 = support2d(c.table.family, l1);
  const auto s2 = support2d(c.table.family, l2);
  const AxisSamples ax1 = sample_axis(c.table, factor_of(l1, 0), std::max(s1[0].lo, s2[0].lo),
                                      std::min(s1[0].hi, s2[0].hi), c.quad);
  if (ax1.coord.empty()) return 0.0;
  const AxisSamples ax2 = sample_axis(c.table, factor_of(l2, 0), std::max(s1[0].lo, s2[0].lo),
                                      std::min(s1[0].hi, s2[0].hi), c.quad);
  const AxisSamples ay1 = sample_axis(c.table, factor_of(l1, 1), std::max(s1[1].lo, s2[1].lo),
                                      std::min(s1[1].hi, s2[1].hi), c.quad);
  if (ay1.coord.empty()) return 0.0;
  const AxisSamples ay2 = sample_axis(c.table, factor_of(l2, 1), std::max(s1[1].lo, s2[1].lo),
                                      std::min(s1[1].hi, s2[1].hi), c.quad);
  double acc = 0.0;
  for (std::size_t iy = 0; iy < ay1.coord.size(); ++iy) {
    const double y = ay1.coord[iy];
    const double wy = ay1.wgt[iy];
    for (std::size_t ix = 0; ix < ax1.coord.size(); ++ix) {
      const double g1x = ax1.dval[ix] * ay1.val[iy];
      const double g1y = ax1.val[ix] * ay1.dval[iy];
      const double g2x = ax2.dval[ix] * ay2.val[iy];
      const double g2y = ax2.val[ix] * ay2.dval[iy];
      if (g1x == 0.0 && g1y == 0.0) continue;
      const ConductivityTensor kk = c.material.conductivity_at(ax1.coord[ix], y);
      const double v = kk.kxx * g1x * g2x + kk.kxy * (g1x * g2y + g1y * g2x) +
                       kk.kyy * g1y * g2y;
      acc += v * ax1.wgt[ix] * wy;
    }
  }
  return acc;
}

// Robin surface contribution for one pair over the Robin edges.
double robin_pair_term(const DyadicTable& table, const BoundarySpec& bc, const WaveletIndex& l1,
                       const WaveletIndex& l2, PairCache& cache) {
  double acc = 0.0;
  for (int e = 0; e < 4; ++e) {
    const EdgeCondition& ec = bc.edges[e];
    if (ec.kind != BcKind::Robin) continue;
    if (ec.robin_h < 0.0) throw ValidationError("Robin coefficient h must be >= 0 on edge");
    if (ec.robin_h == 0.0) continue;
    const Edge edge = static_cast<Edge>(e);
    const bool horizontal = edge == Edge::Bottom || edge == Edge::Top;
    const double fixed = (edge == Edge::Top || edge == Edge::Right) ? 1.0 : 0.0;
    const Fn1D tan1 = factor_of(l1, horizontal ? 0 : 1);
    const Fn1D tan2 = factor_of(l2, horizontal ? 0 : 1);
    const Fn1D nor1 = factor_of(l1, horizontal ? 1 : 0);
    const Fn1D nor2 = factor_of(l2, horizontal ? 1 : 0);
    const double trace = table.eval1d(nor1.wavelet, nor1.j, nor1.k, fixed) *
                         table.eval1d(nor2.wavelet, nor2.j, nor2.k, fixed);
    if (trace == 0.0) continue;
    acc += ec.robin_h * trace * cache.get(tan1, 0, tan2, 0, 0, nullptr);
  }
  return acc;
}

// Symmetric pair-loop assembly shared by mass and stiffness.
template <typename EntryFn>
SparseMatrix assemble_symmetric(const IndexSet& set, const DyadicTable& table,
                                const QuadratureRule& quad, EntryFn&& entry) {
  const int n = set.size();
  std::vector<std::array<Support1D, 2>> sup(n);
  for (int i = 0; i < n; ++i) sup[i] = support2d(table.family, set[i]);
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (!sup[i][0].overlaps(sup[j][0]) || !sup[i][1].overlaps(sup[j][1])) continue;
      const double v = entry(i, j);
      rows[i].emplace_back(j, v);
      if (j != i) rows[j].emplace_back(i, v);
    }
  }
  SparseMatrix::Builder b(n, quad.drop_tolerance);
  for (int i = 0; i < n; ++i)
    for (const auto& [col, v] : rows[i]) b.add(i, col, v);
  return b.finish();
}

void check_inputs(const IndexSet& set, const ProblemDefinition& problem,
                  const QuadratureRule& quad) {
  if (set.size() == 0) throw ValidationError("cannot assemble over an empty index set");
  problem.validate();
  quad.validate();
  if (set.max_wavelet_level() + 1 > quad.base_level)
    throw ResolutionError("quadrature base level below finest wavelet level");
}

}  // namespace

QuadRule quad_rule_from_name(const std::string& name) {
  if (name == "midpoint") return QuadRule::Midpoint;
  if (name == "gauss2") return QuadRule::TwoPointGauss;
  throw ValidationError("unknown quadrature rule: " + name);
}

const char* quad_rule_name(QuadRule r) {
  return r == QuadRule::Midpoint ? "midpoint" : "gauss2";
}

LiftingField LiftingField::build(const ProblemDefinition& problem) {
  LiftingField lf;
  const BoundarySpec& bc = problem.boundary;
  for (int e = 0; e < 4; ++e) {
    const EdgeCondition& ec = bc.edges[e];
    if (ec.kind != BcKind::Dirichlet) continue;
    lf.has_edge_[e] = true;
    lf.edge_data_[e] = ec.data;
    if (ec.data) lf.zero_ = false;
    if (ec.data.time_dependent) lf.time_dependent_ = true;
  }
  // Corner compatibility at t = 0; mismatched data are averaged.
  struct Corner {
    Edge a, b;
    double x, y;
  };
  const Corner corners[4] = {{Edge::Bottom, Edge::Left, 0.0, 0.0},
                             {Edge::Bottom, Edge::Right, 1.0, 0.0},
                             {Edge::Top, Edge::Left, 0.0, 1.0},
                             {Edge::Top, Edge::Right, 1.0, 1.0}};
  for (const Corner& c : corners) {
    const int ia = static_cast<int>(c.a), ib = static_cast<int>(c.b);
    if (!lf.has_edge_[ia] || !lf.has_edge_[ib]) continue;
    const double va = lf.edge_data_[ia](c.x, c.y, 0.0);
    const double vb = lf.edge_data_[ib](c.x, c.y, 0.0);
    if (std::abs(va - vb) > 1e-9) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "incompatible Dirichlet corner data at (%g,%g): %g vs %g, using average", c.x,
                    c.y, va, vb);
      lf.warnings_.emplace_back(buf);
    }
  }
  return lf;
}

double LiftingField::value(double x, double y, double t) const {
  if (zero_) return 0.0;
  auto ed = [&](Edge e, double px, double py) {
    return edge_data_[static_cast<int>(e)](px, py, t);
  };
  auto has = [&](Edge e) { return has_edge_[static_cast<int>(e)]; };
  double acc = 0.0;
  if (has(Edge::Bottom)) acc += (1.0 - y) * ed(Edge::Bottom, x, 0.0);
  if (has(Edge::Top)) acc += y * ed(Edge::Top, x, 1.0);
  if (has(Edge::Left)) acc += (1.0 - x) * ed(Edge::Left, 0.0, y);
  if (has(Edge::Right)) acc += x * ed(Edge::Right, 1.0, y);
  auto corner = [&](Edge a, Edge b, double cx, double cy) {
    return 0.5 * (ed(a, cx, cy) + ed(b, cx, cy));
  };
  if (has(Edge::Bottom) && has(Edge::Left))
    acc -= (1.0 - x) * (1.0 - y) * corner(Edge::Bottom, Edge::Left, 0.0, 0.0);
  if (has(Edge::Bottom) && has(Edge::Right))
    acc -= x * (1.0 - y) * corner(Edge::Bottom, Edge::Right, 1.0, 0.0);
  if (has(Edge::Top) && has(Edge::Left))
    acc -= (1.0 - x) * y * corner(Edge::Top, Edge::Left, 0.0, 1.0);
  if (has(Edge::Top) && has(Edge::Right))
    acc -= x * y * corner(Edge::Top, Edge::Right, 1.0, 1.0);
  return acc;
}

std::array<double, 2> LiftingField::gradient(double x, double y, double t) const {
  if (zero_) return {0.0, 0.0};
  const double d = 1e-6;
  return {(value(x + d, y, t) - value(x - d, y, t)) / (2.0 * d),
          (value(x, y + d, t) - value(x, y - d, t)) / (2.0 * d)};
}

double LiftingField::time_derivative(double x, double y, double t) const {
  if (!time_dependent_) return 0.0;
  const double d = 1e-6;
  if (t >= d) return (value(x, y, t + d) - value(x, y, t - d)) / (2.0 * d);
  return (value(x, y, t + d) - value(x, y, t)) / d;
}

LiftingField build_lifting(const ProblemDefinition& problem) {
  return LiftingField::build(problem);
}

SparseMatrix assemble_mass(const IndexSet& set, const ProblemDefinition& problem,
                           const DyadicTable& table, const QuadratureRule& quad) {
  check_inputs(set, problem, quad);
  const MaterialMap& mat = problem.material;
  const bool constant_rho_cp =
      mat.matrix_phase.rho * mat.matrix_phase.cp ==
      mat.secondary_phase.rho * mat.secondary_phase.cp;
  PairCache cache(table, quad);
  if (mat.separable_in_y() || constant_rho_cp) {
    const Weight1D rho_cp = [&mat](double y) { return mat.rho_cp_at(0.5, y); };
    return assemble_symmetric(set, table, quad, [&](int i, int j) {
      const Fn1D x1 = factor_of(set[i], 0), x2 = factor_of(set[j], 0);
      const Fn1D y1 = factor_of(set[i], 1), y2 = factor_of(set[j], 1);
      return cache.get(x1, 0, x2, 0, 0, nullptr) * cache.get(y1, 0, y2, 0, 1, &rho_cp);
    });
  }
  const Entry2DContext ctx{table, mat, quad};
  return assemble_symmetric(set, table, quad,
                            [&](int i, int j) { return mass_entry_generic(ctx, set[i], set[j]); });
}

SparseMatrix assemble_stiffness(const IndexSet& set, const ProblemDefinition& problem,
                                const DyadicTable& table, const QuadratureRule& quad) {
  check_inputs(set, problem, quad);
  const MaterialMap& mat = problem.material;
  const BoundarySpec& bc = problem.boundary;
  PairCache cache(table, quad);
  if (mat.separable_in_y()) {
    const Weight1D kxx = [&mat](double y) { return mat.conductivity_at(0.5, y).kxx; };
    const Weight1D kyy = [&mat](double y) { return mat.conductivity_at(0.5, y).kyy; };
    return assemble_symmetric(set, table, quad, [&](int i, int j) {
      const Fn1D x1 = factor_of(set[i], 0), x2 = factor_of(set[j], 0);
      const Fn1D y1 = factor_of(set[i], 1), y2 = factor_of(set[j], 1);
      double v = cache.get(x1, 1, x2, 1, 0, nullptr) * cache.get(y1, 0, y2, 0, 2, &kxx) +
                 cache.get(x1, 0, x2, 0, 0, nullptr) * cache.get(y1, 1, y2, 1, 3, &kyy);
      v += robin_pair_term(table, bc, set[i], set[j], cache);
      return v;
    });
  }
  const Entry2DContext ctx{table, mat, quad};
  return assemble_symmetric(set, table, quad, [&](int i, int j) {
    return stiffness_entry_generic(ctx, set[i], set[j]) +
           robin_pair_term(table, bc, set[i], set[j], cache);
  });
}

std::vector<double> assemble_load(const IndexSet& set, const ProblemDefinition& problem,
                                  const DyadicTable& table, const QuadratureRule& quad, double t,
                                  const LiftingField& lifting) {
  check_inputs(set, problem, quad);
  const MaterialMap& mat = problem.material;
  const BoundarySpec& bc = problem.boundary;
  const bool need_volume = static_cast<bool>(problem.source) || !lifting.zero();
  const bool need_dt = lifting.time_dependent();
  std::vector<double> rhs(set.size(), 0.0);
  for (int i = 0; i < set.size(); ++i) {
    const WaveletIndex& idx = set[i];
    const auto sup = support2d(table.family, idx);
    double acc = 0.0;
    if (need_volume) {
      const AxisSamples ax = sample_axis(table, factor_of(idx, 0), sup[0].lo, sup[0].hi, quad);
      const AxisSamples ay = sample_axis(table, factor_of(idx, 1), sup[1].lo, sup[1].hi, quad);
      for (std::size_t iy = 0; iy < ay.coord.size(); ++iy) {
        const double y = ay.coord[iy];
        for (std::size_t ix = 0; ix < ax.coord.size(); ++ix) {
          const double x = ax.coord[ix];
          const double w = ax.wgt[ix] * ay.wgt[iy];
          const double vphi = ax.val[ix] * ay.val[iy];
          double v = 0.0;
          if (problem.source) v += problem.source(x, y, t) * vphi;
          if (!lifting.zero()) {
            const auto g = lifting.gradient(x, y, t);
            const double gx = ax.dval[ix] * ay.val[iy];
            const double gy = ax.val[ix] * ay.dval[iy];
            const ConductivityTensor kk = mat.conductivity_at(x, y);
            v -= (kk.kxx * g[0] + kk.kxy * g[1]) * gx + (kk.kxy * g[0] + kk.kyy * g[1]) * gy;
            if (need_dt) v -= mat.rho_cp_at(x, y) * lifting.time_derivative(x, y, t) * vphi;
          }
          acc += w * v;
        }
      }
    }
    // Neumann / Robin edge data.
    for (int e = 0; e < 4; ++e) {
      const EdgeCondition& ec = bc.edges[e];
      const bool neumann = ec.kind == BcKind::Neumann && static_cast<bool>(ec.data);
      const bool robin = ec.kind == BcKind::Robin && ec.robin_h > 0.0 &&
                         static_cast<bool>(ec.robin_t_inf);
      if (!neumann && !robin) continue;
      const Edge edge = static_cast<Edge>(e);
      const bool horizontal = edge == Edge::Bottom || edge == Edge::Top;
      const double fixed = (edge == Edge::Top || edge == Edge::Right) ? 1.0 : 0.0;
      const Fn1D nor = factor_of(idx, horizontal ? 1 : 0);
      const double trace = table.eval1d(nor.wavelet, nor.j, nor.k, fixed);
      if (trace == 0.0) continue;
      const Fn1D tan = factor_of(idx, horizontal ? 0 : 1);
      const Support1D st = support1d(table.family, tan.wavelet, tan.j, tan.k);
      const CellRange r = cell_range(st.lo, st.hi, quad);
      const double h = quad.spacing();
      const QuadPoints qp = points_for(quad.rule);
      double edge_acc = 0.0;
      for (int c = r.i0; c < r.i1; ++c)
        for (int p = 0; p < qp.count; ++p) {
          const double s = c * h + qp.off[p] * h;
          const double px = horizontal ? s : fixed;
          const double py = horizontal ? fixed : s;
          double g = neumann ? ec.data(px, py, t) : ec.robin_h * ec.robin_t_inf(px, py, t);
          if (robin && !lifting.zero()) g -= ec.robin_h * lifting.value(px, py, t);
          edge_acc += qp.w[p] * h * g * table.eval1d(tan.wavelet, tan.j, tan.k, s);
        }
      acc += trace * edge_acc;
    }
    rhs[i] = acc;
  }
  return rhs;
}

}  // namespace wavegal
