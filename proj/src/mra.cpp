#include "wavegal/mra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wavegal {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

std::vector<double> qmf_highpass(const std::vector<double>& h) {
  const int L = static_cast<int>(h.size());
  std::vector<double> g(L);
  for (int k = 0; k < L; ++k) g[k] = ((k % 2) ? -1.0 : 1.0) * h[L - 1 - k];
  return g;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Haar: return "haar";
    case Family::Daubechies4: return "d4";
    case Family::Daubechies6: return "d6";
    case Family::HierarchicalHat: return "hat";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "haar") return Family::Haar;
  if (name == "d4" || name == "daubechies4") return Family::Daubechies4;
  if (name == "d6" || name == "daubechies6") return Family::Daubechies6;
  if (name == "hat" || name == "hierarchical_hat") return Family::HierarchicalHat;
  throw ValidationError("unknown basis family: " + name);
}

const char* kind_name(Kind k) { return k == Kind::Scaling ? "scaling" : "wavelet"; }

const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::None: return "none";
    case Orientation::Horizontal: return "horizontal";
    case Orientation::Vertical: return "vertical";
    case Orientation::Diagonal: return "diagonal";
  }
  return "?";
}

BasisFamily BasisFamily::make(Family f) {
  BasisFamily b;
  b.tag = f;
  switch (f) {
    case Family::Haar:
      b.lowpass = {1.0 / kSqrt2, 1.0 / kSqrt2};
      b.phi_support = 1;
      b.psi_support = 1;
      b.vanishing_moments = 1;
      break;
    case Family::Daubechies4: {
      const double s3 = std::sqrt(3.0);
      const double c = 4.0 * kSqrt2;
      b.lowpass = {(1.0 + s3) / c, (3.0 + s3) / c, (3.0 - s3) / c, (1.0 - s3) / c};
      b.phi_support = 3;
      b.psi_support = 3;
      b.vanishing_moments = 2;
      break;
    }
    case Family::Daubechies6:
      b.lowpass = {0.3326705529500825,  0.8068915093110924, 0.4598775021184914,
                   -0.1350110200102546, -0.0854412738820267, 0.0352262918857095};
      b.phi_support = 5;
      b.psi_support = 5;
      b.vanishing_moments = 3;
      break;
    case Family::HierarchicalHat:
      // Interpolatory hat: phi is the centered hat on [0,2]; the "wavelet" is
      // the half-width hat on [0,1] sitting at the new dyadic node.
      b.lowpass = {1.0 / (2.0 * kSqrt2), 1.0 / kSqrt2, 1.0 / (2.0 * kSqrt2)};
      b.highpass = {1.0 / kSqrt2, 0.0, 0.0};
      b.phi_support = 2;
      b.psi_support = 1;
      b.vanishing_moments = 0;
      break;
  }
  if (b.highpass.empty()) b.highpass = qmf_highpass(b.lowpass);
  return b;
}

int BasisFamily::scaling_kmin(int j) const {
  (void)j;
  switch (tag) {
    case Family::Haar: return 0;
    case Family::HierarchicalHat: return -1;
    case Family::Daubechies4: return -2;
    case Family::Daubechies6: return -4;
  }
  return 0;
}

int BasisFamily::scaling_kmax(int j) const { return (1 << j) - 1; }

int BasisFamily::wavelet_kmin(int j) const {
  (void)j;
  switch (tag) {
    case Family::Haar: return 0;
    case Family::HierarchicalHat: return 0;
    case Family::Daubechies4: return -1;
    case Family::Daubechies6: return -2;
  }
  return 0;
}

int BasisFamily::wavelet_kmax(int j) const {
  switch (tag) {
    case Family::Haar: return (1 << j) - 1;
    case Family::HierarchicalHat: return (1 << j) - 1;
    case Family::Daubechies4: return (1 << j) - 2;
    case Family::Daubechies6: return (1 << j) - 3;
  }
  return (1 << j) - 1;
}

std::int64_t WaveletIndex::packed() const {
  constexpr std::int64_t off = 1 << 13;
  return ((static_cast<std::int64_t>(level) & 0xF) << 33) |
         ((static_cast<std::int64_t>(kind) & 0x1) << 32) |
         ((static_cast<std::int64_t>(orientation) & 0x3) << 30) |
         ((static_cast<std::int64_t>(kx) + off) << 15) | (static_cast<std::int64_t>(ky) + off);
}

IndexSet::IndexSet(std::vector<WaveletIndex> items) : items_(std::move(items)) {
  pos_.reserve(items_.size() * 2);
  for (int i = 0; i < static_cast<int>(items_.size()); ++i) {
    auto [it, inserted] = pos_.emplace(items_[i].packed(), i);
    if (!inserted) throw ValidationError("duplicate wavelet index in index set");
  }
}

int IndexSet::ordinal_of(const WaveletIndex& idx) const {
  auto it = pos_.find(idx.packed());
  return it == pos_.end() ? -1 : it->second;
}

int IndexSet::max_wavelet_level() const {
  int m = 0;
  for (const auto& idx : items_)
    if (idx.kind == Kind::Wavelet) m = std::max(m, idx.level);
  return m;
}

// ---------------------------------------------------------------------------
// Dyadic tables

DyadicTable build_dyadic_table(const BasisFamily& family, int q) {
  if (q < 4 || q > 14) throw ValidationError("dyadic table depth q must satisfy 4 <= q <= 14");
  DyadicTable t;
  t.family = family;
  t.q = q;
  const auto& h = family.lowpass;
  const int L = static_cast<int>(h.size());
  const int W = L - 1;  // support width of phi
  const long N = static_cast<long>(W) << q;
  t.phi.assign(N + 1, 0.0);

  if (family.tag == Family::Haar) {
    for (long i = 0; i < N; ++i) t.phi[i] = 1.0;  // right-continuous at 1
  } else {
    // Integer values: eigenvector of T_{ij} = sqrt(2) h_{2i-j} for eigenvalue
    // 1, i,j = 1..L-2, normalized to sum 1.
    const int n = L - 2;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const int k = 2 * i - j;
        if (k >= 0 && k < L) T(i - 1, j - 1) = kSqrt2 * h[k];
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(T - Eigen::MatrixXd::Identity(n, n));
    lu.setThreshold(1e-9);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != 1)
      throw ConstructionError("refinement eigenproblem has no unique unit eigenvalue");
    Eigen::VectorXd v = kernel.col(0);
    const double s = v.sum();
    if (std::abs(s) < 1e-12)
      throw ConstructionError("refinement eigenvector has zero sum, cannot normalize");
    v /= s;
    for (int i = 1; i <= n; ++i) t.phi[static_cast<long>(i) << q] = v(i - 1);
    // Fill dyadic points by repeated two-scale refinement.
    for (int m = 1; m <= q; ++m) {
      const long step = 1L << (q - m);
      for (long i = step; i < N; i += 2 * step) {
        if ((i / step) % 2 == 0) continue;
        double acc = 0.0;
        for (int k = 0; k < L; ++k) {
          const long arg = 2 * i - (static_cast<long>(k) << q);  // (2x - k) * 2^q
          if (arg > 0 && arg < N) acc += kSqrt2 * h[k] * t.phi[arg];
        }
        t.phi[i] = acc;
      }
    }
  }

  // psi from the g mask over the wavelet support.
  const auto& g = family.highpass;
  const long Npsi = static_cast<long>(family.psi_support) << q;
  t.psi.assign(Npsi + 1, 0.0);
  if (family.tag == Family::Haar) {
    for (long i = 0; i < Npsi; ++i) t.psi[i] = (2 * i < Npsi) ? 1.0 : -1.0;
  } else {
    for (long i = 0; i <= Npsi; ++i) {
      double acc = 0.0;
      for (int k = 0; k < L; ++k) {
        const long arg = 2 * i - (static_cast<long>(k) << q);
        if (arg >= 0 && arg <= N) acc += kSqrt2 * g[k] * t.phi[arg];
      }
      t.psi[i] = acc;
    }
  }

  // Derivative tables: centered differences, one-sided at the ends. Unused
  // for Haar (a.e. zero derivative) and HierarchicalHat (exact slopes).
  auto make_deriv = [q](const std::vector<double>& v) {
    const long n = static_cast<long>(v.size()) - 1;
    std::vector<double> d(n + 1);
    const double inv = static_cast<double>(1L << q);
    for (long i = 1; i < n; ++i) d[i] = 0.5 * (v[i + 1] - v[i - 1]) * inv;
    d[0] = (v[1] - v[0]) * inv;
    d[n] = (v[n] - v[n - 1]) * inv;
    return d;
  };
  t.dphi = make_deriv(t.phi);
  t.dpsi = make_deriv(t.psi);
  return t;
}

double DyadicTable::table_at(const std::vector<double>& v, double t, int width) const {
  if (t <= 0.0 || t >= width) return 0.0;
  const double pos = t * static_cast<double>(1L << q);
  const long i = static_cast<long>(pos);
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= static_cast<long>(v.size())) return v.back();
  return v[i] * (1.0 - frac) + v[i + 1] * frac;
}

double DyadicTable::mother_phi(double t) const {
  switch (family.tag) {
    case Family::Haar: return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
    case Family::HierarchicalHat: {
      const double u = t - 1.0;
      const double a = 1.0 - std::abs(u);
      return a > 0.0 ? a : 0.0;
    }
    default: return table_at(phi, t, family.phi_support);
  }
}

double DyadicTable::mother_psi(double t) const {
  switch (family.tag) {
    case Family::Haar:
      if (t < 0.0 || t >= 1.0) return 0.0;
      return t < 0.5 ? 1.0 : -1.0;
    case Family::HierarchicalHat: {
      const double u = 2.0 * t - 1.0;
      const double a = 1.0 - std::abs(u);
      return a > 0.0 ? a : 0.0;
    }
    default: return table_at(psi, t, family.psi_support);
  }
}

double DyadicTable::mother_dphi(double t) const {
  switch (family.tag) {
    case Family::Haar: return 0.0;
    case Family::HierarchicalHat:
      if (t <= 0.0 || t >= 2.0) return 0.0;
      return t < 1.0 ? 1.0 : -1.0;
    default: return table_at(dphi, t, family.phi_support);
  }
}

double DyadicTable::mother_dpsi(double t) const {
  switch (family.tag) {
    case Family::Haar: return 0.0;
    case Family::HierarchicalHat:
      if (t <= 0.0 || t >= 1.0) return 0.0;
      return t < 0.5 ? 2.0 : -2.0;
    default: return table_at(dpsi, t, family.psi_support);
  }
}

double DyadicTable::phi1d(int j, int k, double x) const {
  const double scale = static_cast<double>(1 << j);
  return std::exp2(0.5 * j) * mother_phi(scale * x - k);
}

double DyadicTable::psi1d(int j, int k, double x) const {
  const double scale = static_cast<double>(1 << j);
  return std::exp2(0.5 * j) * mother_psi(scale * x - k);
}

double DyadicTable::dphi1d(int j, int k, double x) const {
  const double scale = static_cast<double>(1 << j);
  return scale * std::exp2(0.5 * j) * mother_dphi(scale * x - k);
}

double DyadicTable::dpsi1d(int j, int k, double x) const {
  const double scale = static_cast<double>(1 << j);
  return scale * std::exp2(0.5 * j) * mother_dpsi(scale * x - k);
}

// ---------------------------------------------------------------------------
// Index sets

Support1D support1d(const BasisFamily& fam, bool wavelet, int j, int k) {
  const double h = std::ldexp(1.0, -j);
  const int w = wavelet ? fam.psi_support : fam.phi_support;
  return {k * h, (k + w) * h};
}

std::array<Support1D, 2> support2d(const BasisFamily& fam, const WaveletIndex& idx) {
  const bool wx = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Horizontal ||
                                                idx.orientation == Orientation::Diagonal);
  const bool wy = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Vertical ||
                                                idx.orientation == Orientation::Diagonal);
  return {support1d(fam, wx, idx.level, idx.kx), support1d(fam, wy, idx.level, idx.ky)};
}

namespace {

// Axis-wise Dirichlet admissibility. For the interpolatory hat family only
// functions with a node on the edge have nonzero trace; for the others any
// support contact with the edge is fatal.
bool axis_admissible(const BasisFamily& fam, bool wavelet, int j, int k, bool dir_lo,
                     bool dir_hi) {
  if (!dir_lo && !dir_hi) return true;
  if (fam.tag == Family::HierarchicalHat) {
    if (wavelet) return true;  // interior node by construction
    if (dir_lo && k == -1) return false;
    if (dir_hi && k == (1 << j) - 1) return false;
    return true;
  }
  const Support1D s = support1d(fam, wavelet, j, k);
  if (dir_lo && s.lo <= 0.0) return false;
  if (dir_hi && s.hi >= 1.0) return false;
  return true;
}

}  // namespace

bool admissible_under_dirichlet(const BasisFamily& fam, const WaveletIndex& idx,
                                const std::set<Edge>& dirichlet_edges) {
  const bool dl = dirichlet_edges.count(Edge::Left) > 0;
  const bool dr = dirichlet_edges.count(Edge::Right) > 0;
  const bool db = dirichlet_edges.count(Edge::Bottom) > 0;
  const bool dt = dirichlet_edges.count(Edge::Top) > 0;
  const bool wx = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Horizontal ||
                                                idx.orientation == Orientation::Diagonal);
  const bool wy = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Vertical ||
                                                idx.orientation == Orientation::Diagonal);
  return axis_admissible(fam, wx, idx.level, idx.kx, dl, dr) &&
         axis_admissible(fam, wy, idx.level, idx.ky, db, dt);
}

IndexSet full_index_set(int J, const BasisFamily& fam, const std::set<Edge>& dirichlet_edges) {
  if (J < 1) throw ValidationError("full_index_set requires J >= 1");
  const long n1 = fam.scaling_count(J);
  const long estimate = n1 * n1;
  if (J > 12 || estimate > (1L << 26)) {
    std::ostringstream os;
    os << "index set at J=" << J << " would hold about " << estimate
       << " entries, above the memory budget";
    throw ResourceError(os.str());
  }

  std::vector<WaveletIndex> items;
  items.reserve(estimate);
  auto push = [&](WaveletIndex idx) {
    if (admissible_under_dirichlet(fam, idx, dirichlet_edges)) items.push_back(idx);
  };

  for (int kx = fam.scaling_kmin(0); kx <= fam.scaling_kmax(0); ++kx)
    for (int ky = fam.scaling_kmin(0); ky <= fam.scaling_kmax(0); ++ky)
      push({0, Kind::Scaling, Orientation::None, kx, ky});

  for (int j = 0; j < J; ++j) {
    for (int kx = fam.wavelet_kmin(j); kx <= fam.wavelet_kmax(j); ++kx)
      for (int ky = fam.scaling_kmin(j); ky <= fam.scaling_kmax(j); ++ky)
        push({j, Kind::Wavelet, Orientation::Horizontal, kx, ky});
    for (int kx = fam.scaling_kmin(j); kx <= fam.scaling_kmax(j); ++kx)
      for (int ky = fam.wavelet_kmin(j); ky <= fam.wavelet_kmax(j); ++ky)
        push({j, Kind::Wavelet, Orientation::Vertical, kx, ky});
    for (int kx = fam.wavelet_kmin(j); kx <= fam.wavelet_kmax(j); ++kx)
      for (int ky = fam.wavelet_kmin(j); ky <= fam.wavelet_kmax(j); ++ky)
        push({j, Kind::Wavelet, Orientation::Diagonal, kx, ky});
  }
  return IndexSet(std::move(items));
}

long dim_single_scale(const BasisFamily& fam, int J) {
  const long n = fam.scaling_count(J);
  return n * n;
}

double evaluate_basis_function(const WaveletIndex& idx, const DyadicTable& table, double x,
                               double y) {
  const bool wx = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Horizontal ||
                                                idx.orientation == Orientation::Diagonal);
  const bool wy = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Vertical ||
                                                idx.orientation == Orientation::Diagonal);
  const double fx = table.eval1d(wx, idx.level, idx.kx, x);
  if (fx == 0.0) return 0.0;
  return fx * table.eval1d(wy, idx.level, idx.ky, y);
}

std::array<double, 2> evaluate_basis_gradient(const WaveletIndex& idx, const DyadicTable& table,
                                              double x, double y) {
  const bool wx = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Horizontal ||
                                                idx.orientation == Orientation::Diagonal);
  const bool wy = idx.kind == Kind::Wavelet && (idx.orientation == Orientation::Vertical ||
                                                idx.orientation == Orientation::Diagonal);
  const double fx = table.eval1d(wx, idx.level, idx.kx, x);
  const double fy = table.eval1d(wy, idx.level, idx.ky, y);
  const double gx = table.deriv1d(wx, idx.level, idx.kx, x);
  const double gy = table.deriv1d(wy, idx.level, idx.ky, y);
  return {gx * fy, fx * gy};
}

double evaluate_expansion(const std::vector<double>& coeffs, const IndexSet& set,
                          const DyadicTable& table, double x, double y) {
  if (static_cast<int>(coeffs.size()) != set.size())
    throw DimensionError("coefficient vector length does not match index set size");
  double acc = 0.0;
  for (int i = 0; i < set.size(); ++i) {
    const double c = coeffs[i];
    if (c == 0.0) continue;
    const auto sup = support2d(table.family, set[i]);
    if (x < sup[0].lo || x > sup[0].hi || y < sup[1].lo || y > sup[1].hi) continue;
    acc += c * evaluate_basis_function(set[i], table, x, y);
  }
  return acc;
}

void dump_index_set_csv(const IndexSet& set, std::ostream& os) {
  os << "ordinal,level,kind,orientation,kx,ky\n";
  for (int i = 0; i < set.size(); ++i) {
    const auto& idx = set[i];
    os << i << ',' << idx.level << ',' << kind_name(idx.kind) << ','
       << orientation_name(idx.orientation) << ',' << idx.kx << ',' << idx.ky << '\n';
  }
}

}  // namespace wavegal
