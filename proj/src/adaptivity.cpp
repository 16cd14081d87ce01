#include "wavegal/adaptivity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace wavegal {

namespace {

// Inclusive k-range of level-j factors of width w whose open support overlaps
// (lo, hi). All bounds are dyadic, so the arithmetic is exact.
std::pair<int, int> overlapping_k(double lo, double hi, int j, int w) {
  const double s = std::ldexp(1.0, j);
  const int kmin = static_cast<int>(std::floor(lo * s - w)) + 1;
  const int kmax = static_cast<int>(std::ceil(hi * s)) - 1;
  return {kmin, kmax};
}

struct Collector {
  const IndexSet& full;
  std::unordered_set<std::int64_t> keep;

  void add(const WaveletIndex& idx) {
    if (full.contains(idx)) keep.insert(idx.packed());
  }

  // All functions of the given level/kind/orientation overlapping `sup`.
  void add_overlapping(int level, Kind kind, Orientation orient,
                       const std::array<Support1D, 2>& sup, const BasisFamily& fam) {
    WaveletIndex probe{level, kind, orient, 0, 0};
    const auto facs = support2d(fam, probe);  // only widths matter
    const int wx = static_cast<int>(std::lround((facs[0].hi - facs[0].lo) * std::ldexp(1.0, level)));
    const int wy = static_cast<int>(std::lround((facs[1].hi - facs[1].lo) * std::ldexp(1.0, level)));
    const auto [x0, x1] = overlapping_k(sup[0].lo, sup[0].hi, level, wx);
    const auto [y0, y1] = overlapping_k(sup[1].lo, sup[1].hi, level, wy);
    for (int kx = x0; kx <= x1; ++kx)
      for (int ky = y0; ky <= y1; ++ky) add({level, kind, orient, kx, ky});
  }
};

constexpr Orientation kOrients[3] = {Orientation::Horizontal, Orientation::Vertical,
                                     Orientation::Diagonal};

}  // namespace

std::vector<WaveletIndex> mark_essential(const std::vector<double>& coeffs,
                                         const IndexSet& active, const AdaptivityPolicy& policy) {
  policy.validate();
  if (static_cast<int>(coeffs.size()) != active.size())
    throw DimensionError("coefficient vector does not match active set");
  std::vector<WaveletIndex> marked;
  for (int i = 0; i < active.size(); ++i) {
    const WaveletIndex& idx = active[i];
    const bool safety_net = idx.kind == Kind::Scaling && idx.level == 0;
    if (safety_net || std::abs(coeffs[i]) >= policy.eps_tol) marked.push_back(idx);
  }
  return marked;
}

IndexSet expand_neighborhood(const std::vector<WaveletIndex>& marked, const IndexSet& full,
                             const BasisFamily& fam, const AdaptivityPolicy& policy) {
  policy.validate();
  const int finest = full.max_wavelet_level();
  Collector col{full, {}};
  // The coarsest layer is implicitly essential: with heavy Dirichlet
  // restriction every level-0 scaling can be dropped, and without this
  // closure an all-below-threshold state could never grow again.
  std::vector<WaveletIndex> seeds = marked;
  bool has_scaling = false;
  for (const auto& idx : full.items())
    if (idx.kind == Kind::Scaling && idx.level == 0) has_scaling = true;
  for (const auto& idx : full.items()) {
    const bool seed = has_scaling ? (idx.kind == Kind::Scaling && idx.level == 0)
                                  : idx.level == 0;
    if (seed) seeds.push_back(idx);
  }
  for (const WaveletIndex& idx : seeds) {
    col.add(idx);
    // Same-level translates within the radius, every orientation.
    for (int dx = -policy.radius; dx <= policy.radius; ++dx)
      for (int dy = -policy.radius; dy <= policy.radius; ++dy) {
        if (idx.kind == Kind::Scaling) {
          col.add({idx.level, Kind::Scaling, Orientation::None, idx.kx + dx, idx.ky + dy});
          for (Orientation o : kOrients)
            col.add({idx.level, Kind::Wavelet, o, idx.kx + dx, idx.ky + dy});
        } else {
          for (Orientation o : kOrients)
            col.add({idx.level, Kind::Wavelet, o, idx.kx + dx, idx.ky + dy});
        }
      }
    const auto sup = support2d(fam, idx);
    if (policy.include_parents) {
      if (idx.kind == Kind::Wavelet && idx.level > 0) {
        for (Orientation o : kOrients)
          col.add_overlapping(idx.level - 1, Kind::Wavelet, o, sup, fam);
      } else if (idx.kind == Kind::Wavelet) {
        col.add_overlapping(0, Kind::Scaling, Orientation::None, sup, fam);
      }
    }
    if (policy.include_children) {
      if (idx.kind == Kind::Scaling) {
        for (Orientation o : kOrients) col.add_overlapping(0, Kind::Wavelet, o, sup, fam);
      } else if (idx.level < finest) {
        for (Orientation o : kOrients)
          col.add_overlapping(idx.level + 1, Kind::Wavelet, o, sup, fam);
      }
    }
  }
  std::vector<WaveletIndex> result;
  for (const auto& idx : full.items())
    if (col.keep.count(idx.packed())) result.push_back(idx);
  if (result.empty() && full.size() > 0) {
    // Degenerate restriction with nothing at level 0: keep the coarsest
    // level that survived so the set is never empty.
    int lo = full[0].level;
    for (const auto& idx : full.items()) lo = std::min(lo, idx.level);
    for (const auto& idx : full.items())
      if (idx.level == lo) result.push_back(idx);
  }
  return IndexSet(std::move(result));
}

std::vector<double> transfer_coefficients(const std::vector<double>& coeffs, const IndexSet& from,
                                          const IndexSet& to) {
  if (static_cast<int>(coeffs.size()) != from.size())
    throw DimensionError("coefficient vector does not match source set");
  std::vector<double> out(to.size(), 0.0);
  for (int i = 0; i < to.size(); ++i) {
    const int o = from.ordinal_of(to[i]);
    if (o >= 0) out[i] = coeffs[o];
  }
  return out;
}

IndexSet initial_active_set(const std::function<double(double, double)>& u0, const IndexSet& full,
                            const DyadicTable& table, const AdaptivityPolicy& policy) {
  policy.validate();
  if (!policy.enabled) return full;
  const std::vector<double> coeffs = project_function(u0, full, table);
  const std::vector<WaveletIndex> marked = mark_essential(coeffs, full, policy);
  return expand_neighborhood(marked, full, table.family, policy);
}

}  // namespace wavegal
