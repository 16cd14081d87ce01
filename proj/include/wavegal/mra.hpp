#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "wavegal/problem.hpp"

namespace wavegal {

enum class Family { Haar, Daubechies4, Daubechies6, HierarchicalHat };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Two-scale masks and support data for one wavelet family.
struct BasisFamily {
  Family tag = Family::HierarchicalHat;
  std::vector<double> lowpass;   // h_k, sum = sqrt(2)
  std::vector<double> highpass;  // g_k
  int phi_support = 2;           // support width of the scaling function
  int psi_support = 1;           // support width of the wavelet
  int vanishing_moments = 1;

  static BasisFamily make(Family f);
  bool orthogonal() const { return tag != Family::HierarchicalHat; }

  // Admissible 1-D translation ranges at level j (inclusive bounds).
  int scaling_kmin(int j) const;
  int scaling_kmax(int j) const;
  int wavelet_kmin(int j) const;
  int wavelet_kmax(int j) const;
  int scaling_count(int j) const { return scaling_kmax(j) - scaling_kmin(j) + 1; }
  int wavelet_count(int j) const { return wavelet_kmax(j) - wavelet_kmin(j) + 1; }
};

enum class Kind : std::uint8_t { Scaling, Wavelet };
enum class Orientation : std::uint8_t { None, Horizontal, Vertical, Diagonal };

const char* kind_name(Kind k);
const char* orientation_name(Orientation o);

// Multi-index lambda = (level, kind, orientation, translation). Scaling
// indices exist only at level 0; within a wavelet index the non-oscillatory
// tensor factor is the level-j scaling function at that translation.
struct WaveletIndex {
  int level = 0;
  Kind kind = Kind::Scaling;
  Orientation orientation = Orientation::None;
  int kx = 0;
  int ky = 0;

  bool operator==(const WaveletIndex&) const = default;
  std::int64_t packed() const;
};

// Ordered, duplicate-free index collection with ordinal lookup. Ordering is
// level-major, then kind (scaling first), then orientation (H, V, D), then
// kx, then ky.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(std::vector<WaveletIndex> items);

  int size() const { return static_cast<int>(items_.size()); }
  const WaveletIndex& operator[](int i) const { return items_[i]; }
  const std::vector<WaveletIndex>& items() const { return items_; }

  // Ordinal of the index, or -1 if absent.
  int ordinal_of(const WaveletIndex& idx) const;
  bool contains(const WaveletIndex& idx) const { return ordinal_of(idx) >= 0; }

  int max_wavelet_level() const;

private:
  std::vector<WaveletIndex> items_;
  std::unordered_map<std::int64_t, int> pos_;
};

// Tabulated mother scaling function and wavelet on a dyadic grid of spacing
// 2^{-q} over their supports, plus finite-difference derivative tables.
struct DyadicTable {
  BasisFamily family;
  int q = 10;
  std::vector<double> phi, psi;    // values at i * 2^{-q}
  std::vector<double> dphi, dpsi;  // centered differences, one-sided at ends

  double mother_phi(double t) const;
  double mother_psi(double t) const;
  double mother_dphi(double t) const;
  double mother_dpsi(double t) const;

  // Normalized 1-D basis functions 2^{j/2} phi(2^j x - k) and derivatives.
  double phi1d(int j, int k, double x) const;
  double psi1d(int j, int k, double x) const;
  double dphi1d(int j, int k, double x) const;
  double dpsi1d(int j, int k, double x) const;
  double eval1d(bool wavelet, int j, int k, double x) const {
    return wavelet ? psi1d(j, k, x) : phi1d(j, k, x);
  }
  double deriv1d(bool wavelet, int j, int k, double x) const {
    return wavelet ? dpsi1d(j, k, x) : dphi1d(j, k, x);
  }

private:
  double table_at(const std::vector<double>& v, double t, int width) const;
};

// Tabulate phi/psi by solving the refinement eigenproblem at the integers and
// refining dyadically. Requires 4 <= q <= 14.
DyadicTable build_dyadic_table(const BasisFamily& family, int q);

// 1-D closed support [lo, hi] of the (possibly boundary-overhanging) factor.
struct Support1D {
  double lo, hi;
  bool overlaps(const Support1D& o) const { return lo < o.hi && o.lo < hi; }
};
Support1D support1d(const BasisFamily& fam, bool wavelet, int j, int k);

// Per-axis closed support of the tensor-product basis function.
std::array<Support1D, 2> support2d(const BasisFamily& fam, const WaveletIndex& idx);

// True if the function survives restriction-based adaptation to homogeneous
// Dirichlet conditions on the given edges.
bool admissible_under_dirichlet(const BasisFamily& fam, const WaveletIndex& idx,
                                const std::set<Edge>& dirichlet_edges);

// All level-0 scaling indices plus wavelet indices for j = 0..J-1 in the
// three tensor orientations, minus those violating Dirichlet traces.
IndexSet full_index_set(int J, const BasisFamily& fam, const std::set<Edge>& dirichlet_edges);

// Single-scale dimension of V_J (tensor product), used for DOF-economy and
// cardinality accounting.
long dim_single_scale(const BasisFamily& fam, int J);

double evaluate_basis_function(const WaveletIndex& idx, const DyadicTable& table, double x,
                               double y);
std::array<double, 2> evaluate_basis_gradient(const WaveletIndex& idx, const DyadicTable& table,
                                              double x, double y);

double evaluate_expansion(const std::vector<double>& coeffs, const IndexSet& set,
                          const DyadicTable& table, double x, double y);

// Expansion coefficients of a spatial function. HierarchicalHat uses exact
// hierarchical interpolation; orthogonal families solve the discrete Galerkin
// (Gram) system on a dyadic quadrature grid of spacing 2^{-(J+depth)}.
std::vector<double> project_function(const std::function<double(double, double)>& f,
                                     const IndexSet& set, const DyadicTable& table,
                                     int quad_depth = 2);

// CSV dump: ordinal,level,kind,orientation,kx,ky
void dump_index_set_csv(const IndexSet& set, std::ostream& os);

}  // namespace wavegal
