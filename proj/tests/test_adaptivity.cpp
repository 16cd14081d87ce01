#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wavegal/adaptivity.hpp"

using namespace wavegal;

namespace {

bool contains(const std::vector<WaveletIndex>& v, const WaveletIndex& idx) {
  return std::find(v.begin(), v.end(), idx) != v.end();
}

bool supports_overlap(const BasisFamily& fam, const WaveletIndex& a, const WaveletIndex& b) {
  const auto sa = support2d(fam, a);
  const auto sb = support2d(fam, b);
  return sa[0].overlaps(sb[0]) && sa[1].overlaps(sb[1]);
}

}  // namespace

TEST_CASE("mark_essential threshold examples") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  const IndexSet set({WaveletIndex{0, Kind::Scaling, Orientation::None, 0, 0},
                      WaveletIndex{0, Kind::Wavelet, Orientation::Horizontal, 0, 0},
                      WaveletIndex{1, Kind::Wavelet, Orientation::Vertical, 1, 1}});
  AdaptivityPolicy policy;
  policy.eps_tol = 0.01;
  const auto marked = mark_essential({0.5, 0.005, 0.2}, set, policy);
  REQUIRE(marked.size() == 2);
  CHECK(marked[0] == set[0]);
  CHECK(marked[1] == set[2]);

  policy.eps_tol = 10.0;  // larger than every coefficient: safety net only
  const auto net = mark_essential({0.5, 0.005, 0.2}, set, policy);
  REQUIRE(net.size() == 1);
  CHECK(net[0].kind == Kind::Scaling);

  policy.eps_tol = 1e-300;  // all nonzero coefficients plus the net
  const auto all = mark_essential({0.5, 0.0, 0.2}, set, policy);
  CHECK(all.size() == 2);
}

TEST_CASE("threshold monotonicity and safety net on random vectors") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  const IndexSet full = full_index_set(3, hat, {});
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ue(0.0, 1.0);
  AdaptivityPolicy p1, p2;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(full.size());
    for (double& v : c) v = u(rng);
    p1.eps_tol = ue(rng);
    p2.eps_tol = p1.eps_tol + ue(rng);
    const auto m1 = mark_essential(c, full, p1);
    const auto m2 = mark_essential(c, full, p2);
    for (const auto& idx : m2) CHECK(contains(m1, idx));  // larger eps marks fewer
    for (int i = 0; i < full.size(); ++i)
      if (full[i].kind == Kind::Scaling && full[i].level == 0) CHECK(contains(m1, full[i]));
    const IndexSet expanded = expand_neighborhood(m2, full, hat, p2);
    for (const auto& idx : m2) CHECK(expanded.contains(idx));  // soundness
    for (int i = 0; i < full.size(); ++i)
      if (full[i].kind == Kind::Scaling && full[i].level == 0) CHECK(expanded.contains(full[i]));
  }
}

TEST_CASE("expansion matches a brute-force support-overlap scan") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  const IndexSet full = full_index_set(4, hat, {});
  const WaveletIndex seed{2, Kind::Wavelet, Orientation::Horizontal, 3, 3};
  REQUIRE(full.contains(seed));
  AdaptivityPolicy policy;
  const IndexSet out = expand_neighborhood({seed}, full, hat, policy);

  CHECK(out.contains(seed));
  // same-level translates within the radius, all orientations
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      for (Orientation o :
           {Orientation::Horizontal, Orientation::Vertical, Orientation::Diagonal}) {
        const WaveletIndex t{2, Kind::Wavelet, o, 3 + dx, 3 + dy};
        if (full.contains(t)) CHECK(out.contains(t));
      }
  // every overlapping parent (j=1) and child (j=3) wavelet, by brute force
  for (int i = 0; i < full.size(); ++i) {
    const WaveletIndex& idx = full[i];
    if (idx.kind != Kind::Wavelet) continue;
    if ((idx.level == 1 || idx.level == 3) && supports_overlap(hat, idx, seed))
      CHECK(out.contains(idx));
  }
  // canonical ordering inherited from the full set
  int last = -1;
  for (int i = 0; i < out.size(); ++i) {
    const int o = full.ordinal_of(out[i]);
    CHECK(o > last);
    last = o;
  }
}

TEST_CASE("double expansion equals one extra ring when flags are off") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  const IndexSet full = full_index_set(3, hat, {});
  AdaptivityPolicy r1;
  r1.include_parents = false;
  r1.include_children = false;
  r1.radius = 1;
  AdaptivityPolicy r2 = r1;
  r2.radius = 2;
  const std::vector<WaveletIndex> seed = {{1, Kind::Wavelet, Orientation::Vertical, 1, 1}};
  const IndexSet once = expand_neighborhood(seed, full, hat, r1);
  const IndexSet twice = expand_neighborhood(once.items(), full, hat, r1);
  const IndexSet wide = expand_neighborhood(seed, full, hat, r2);
  REQUIRE(twice.size() == wide.size());
  for (int i = 0; i < twice.size(); ++i) CHECK(twice[i] == wide[i]);
}

TEST_CASE("coarse seeds expand into their level-0 wavelet neighbors") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  const IndexSet full = full_index_set(3, hat, {});
  std::vector<WaveletIndex> scalings;
  for (int i = 0; i < full.size(); ++i)
    if (full[i].kind == Kind::Scaling) scalings.push_back(full[i]);
  const IndexSet out = expand_neighborhood(scalings, full, hat, {});
  bool has_wavelet = false;
  for (int i = 0; i < out.size(); ++i) {
    CHECK(out[i].level == 0);
    if (out[i].kind == Kind::Wavelet) has_wavelet = true;
  }
  CHECK(has_wavelet);
}

TEST_CASE("coefficient transfer") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  const IndexSet full = full_index_set(3, hat, {});
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(full.size());
  for (double& v : c) v = u(rng);

  const auto same = transfer_coefficients(c, full, full);
  CHECK(same == c);

  // shrink to the first half, then grow back: retained values survive
  std::vector<WaveletIndex> half_items(full.items().begin(),
                                       full.items().begin() + full.size() / 2);
  const IndexSet half(half_items);
  const auto down = transfer_coefficients(c, full, half);
  for (int i = 0; i < half.size(); ++i) CHECK(down[i] == c[i]);
  const auto up = transfer_coefficients(down, half, full);
  for (int i = 0; i < full.size(); ++i) {
    if (half.contains(full[i]))
      CHECK(up[i] == c[i]);
    else
      CHECK(up[i] == 0.0);
  }
  CHECK_THROWS_AS(transfer_coefficients({1.0}, full, half), DimensionError);
}

TEST_CASE("initial set for zero data is the coarse stencil") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  const IndexSet full = full_index_set(4, t.family, {});
  AdaptivityPolicy policy;
  policy.eps_tol = 1e-3;
  const IndexSet set =
      initial_active_set([](double, double) { return 0.0; }, full, t, policy);
  CHECK(set.size() > 0);
  for (int i = 0; i < set.size(); ++i) CHECK(set[i].level == 0);
}

TEST_CASE("initial set localizes a sharp ramp") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  const IndexSet full = full_index_set(5, t.family, {});
  AdaptivityPolicy policy;
  policy.eps_tol = 1e-3;
  policy.max_level_J = 5;
  auto ramp = [](double, double y) { return 0.5 * (1.0 + std::tanh(60.0 * (y - 0.5))); };
  const IndexSet set = initial_active_set(ramp, full, t, policy);
  const int finest = set.max_wavelet_level();
  REQUIRE(finest >= 3);
  int total = 0, in_band = 0;
  for (int i = 0; i < set.size(); ++i) {
    const WaveletIndex& idx = set[i];
    if (idx.kind != Kind::Wavelet || idx.level != finest) continue;
    ++total;
    const auto sup = support2d(t.family, idx);
    const double w = sup[1].hi - sup[1].lo;
    const double mid = 0.5 * (sup[1].lo + sup[1].hi);
    if (std::abs(mid - 0.5) <= 2.0 * w) ++in_band;
  }
  REQUIRE(total > 0);
  CHECK(static_cast<double>(in_band) / total >= 0.8);
}

TEST_CASE("initial set does not over-refine resolvable data") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  const IndexSet full = full_index_set(5, t.family, {});
  AdaptivityPolicy policy;
  policy.eps_tol = 1e-6;
  policy.max_level_J = 5;
  // bilinear data are exactly captured by the level-0 scalings
  const IndexSet set =
      initial_active_set([](double x, double y) { return x + 0.5 * y; }, full, t, policy);
  CHECK(set.max_wavelet_level() <= 1);
}

TEST_CASE("policy validation") {
  AdaptivityPolicy p;
  p.eps_tol = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.radius = -1;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.stride = 0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
