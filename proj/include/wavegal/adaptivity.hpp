#pragma once

#include <functional>
#include <vector>

#include "wavegal/mra.hpp"

namespace wavegal {

struct AdaptivityPolicy {
  bool enabled = true;
  double eps_tol = 1e-4;
  int radius = 1;              // same-level translate neighborhood radius
  bool include_parents = true;
  bool include_children = true;
  int max_level_J = 5;         // finest admissible wavelet level is J-1
  int stride = 1;              // re-adapt every `stride` steps

  void validate() const {
    if (eps_tol < 0.0) throw ValidationError("eps_tol must be >= 0");
    if (radius < 0) throw ValidationError("adaptivity radius must be >= 0");
    if (max_level_J < 1) throw ValidationError("max_level_J must be >= 1");
    if (stride < 1) throw ValidationError("adaptivity stride must be >= 1");
  }
};

// Indices whose coefficients pass the threshold, plus every active level-0
// scaling index as a coarse safety net. Order follows the active set.
std::vector<WaveletIndex> mark_essential(const std::vector<double>& coeffs,
                                         const IndexSet& active, const AdaptivityPolicy& policy);

// Closure of the marked set: same-level translates within the radius in every
// orientation, support-overlapping parents one level down, and (below J-1)
// support-overlapping children one level up. The active level-0 layer is
// implicitly seeded so the set can always regrow. Result is the intersection
// with `full`, in the canonical order inherited from `full`.
IndexSet expand_neighborhood(const std::vector<WaveletIndex>& marked, const IndexSet& full,
                             const BasisFamily& fam, const AdaptivityPolicy& policy);

// Copy coefficients of retained indices, zero-fill newly activated ones.
std::vector<double> transfer_coefficients(const std::vector<double>& coeffs, const IndexSet& from,
                                          const IndexSet& to);

// Threshold-and-expand the projection of the initial field.
IndexSet initial_active_set(const std::function<double(double, double)>& u0, const IndexSet& full,
                            const DyadicTable& table, const AdaptivityPolicy& policy);

}  // namespace wavegal
