#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wavegal/mra.hpp"

using namespace wavegal;

namespace {

const Family kAll[4] = {Family::Haar, Family::Daubechies4, Family::Daubechies6,
                        Family::HierarchicalHat};

// Largest |phi(x) - sqrt(2) sum_k h_k phi(2x - k)| over the dyadic table grid
// (interior points only; the endpoint one is affected by the open-support
// convention at integer breakpoints for Haar).
double two_scale_residual(const DyadicTable& t, bool wavelet) {
  const auto& mask = wavelet ? t.family.highpass : t.family.lowpass;
  const int width = wavelet ? t.family.psi_support : t.family.phi_support;
  const double s = std::sqrt(2.0);
  double worst = 0.0;
  const int np = width << t.q;
  for (int i = 1; i < np; ++i) {
    const double x = std::ldexp(static_cast<double>(i), -t.q);
    double rhs = 0.0;
    for (std::size_t k = 0; k < mask.size(); ++k)
      rhs += mask[k] * t.mother_phi(2.0 * x - static_cast<double>(k));
    const double lhs = wavelet ? t.mother_psi(x) : t.mother_phi(x);
    worst = std::max(worst, std::abs(lhs - s * rhs));
  }
  return worst;
}

}  // namespace

TEST_CASE("family masks") {
  for (Family f : kAll) {
    const BasisFamily fam = BasisFamily::make(f);
    double sum = 0.0;
    for (double h : fam.lowpass) sum += h;
    CHECK(sum == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  CHECK(BasisFamily::make(Family::Haar).lowpass.size() == 2);
  CHECK(BasisFamily::make(Family::Daubechies4).lowpass.size() == 4);
  CHECK(BasisFamily::make(Family::Daubechies6).lowpass.size() == 6);
  CHECK(BasisFamily::make(Family::Daubechies4).vanishing_moments == 2);
  CHECK(BasisFamily::make(Family::Daubechies6).vanishing_moments == 3);
  CHECK_FALSE(BasisFamily::make(Family::HierarchicalHat).orthogonal());
  CHECK(family_from_name("haar") == Family::Haar);
  CHECK(family_from_name(family_name(Family::Daubechies6)) == Family::Daubechies6);
  CHECK_THROWS_AS(family_from_name("spline"), ValidationError);
}

TEST_CASE("dyadic table construction bounds") {
  CHECK_THROWS_AS(build_dyadic_table(BasisFamily::make(Family::Haar), 3), ValidationError);
  CHECK_THROWS_AS(build_dyadic_table(BasisFamily::make(Family::Haar), 15), ValidationError);
}

TEST_CASE("two-scale relation holds on the table grid") {
  for (Family f : kAll) {
    const DyadicTable t = build_dyadic_table(BasisFamily::make(f), 10);
    CHECK(two_scale_residual(t, false) <= 1e-8);
    CHECK(two_scale_residual(t, true) <= 1e-8);
  }
}

TEST_CASE("Daubechies-4 scaling values at the integers") {
  // From the refinement eigenproblem: phi(1) = (1+sqrt(3))/2, phi(2) = (1-sqrt(3))/2.
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Daubechies4), 10);
  const double s3 = std::sqrt(3.0);
  CHECK(t.mother_phi(1.0) == doctest::Approx((1.0 + s3) / 2.0).epsilon(1e-10));
  CHECK(t.mother_phi(2.0) == doctest::Approx((1.0 - s3) / 2.0).epsilon(1e-10));
}

TEST_CASE("partition of unity") {
  for (Family f : kAll) {
    const DyadicTable t = build_dyadic_table(BasisFamily::make(f), 10);
    const int w = t.family.phi_support;
    for (int i = 0; i < 64; ++i) {
      const double x = (i + 0.5) / 64.0;  // shifts stay off the breakpoints
      double sum = 0.0;
      for (int k = -w; k <= 0; ++k) sum += t.mother_phi(x - k);
      CHECK(std::abs(sum - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("discrete vanishing moments") {
  for (Family f : {Family::Daubechies4, Family::Daubechies6}) {
    const DyadicTable t = build_dyadic_table(BasisFamily::make(f), 12);
    const int w = t.family.psi_support;
    const double h = std::ldexp(1.0, -t.q);
    for (int m = 0; m < t.family.vanishing_moments; ++m) {
      double acc = 0.0;
      for (int i = 0; i < (w << t.q); ++i) {
        const double x = (i + 0.5) * h;
        acc += std::pow(x, m) * t.mother_psi(x) * h;
      }
      CHECK(std::abs(acc) <= 1e-7);
    }
  }
}

TEST_CASE("Haar hierarchy cardinalities") {
  const BasisFamily fam = BasisFamily::make(Family::Haar);
  const IndexSet s1 = full_index_set(1, fam, {});
  CHECK(s1.size() == 4);
  CHECK(s1[0].kind == Kind::Scaling);
  CHECK(s1[1] == WaveletIndex{0, Kind::Wavelet, Orientation::Horizontal, 0, 0});
  CHECK(s1[2] == WaveletIndex{0, Kind::Wavelet, Orientation::Vertical, 0, 0});
  CHECK(s1[3] == WaveletIndex{0, Kind::Wavelet, Orientation::Diagonal, 0, 0});
  CHECK(full_index_set(2, fam, {}).size() == 16);
}

TEST_CASE("cardinality matches the single-scale dimension") {
  for (Family f : kAll) {
    const BasisFamily fam = BasisFamily::make(f);
    for (int J = 1; J <= 6; ++J) {
      const IndexSet set = full_index_set(J, fam, {});
      CHECK(static_cast<long>(set.size()) == dim_single_scale(fam, J));
    }
  }
}

TEST_CASE("deterministic canonical ordering") {
  const BasisFamily fam = BasisFamily::make(Family::Daubechies4);
  const IndexSet a = full_index_set(3, fam, {Edge::Bottom});
  const IndexSet b = full_index_set(3, fam, {Edge::Bottom});
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  // level-major, scaling first
  int last_level = 0;
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a[i].level >= last_level);
    last_level = a[i].level;
    if (a[i].kind == Kind::Scaling) CHECK(a[i].level == 0);
  }
  for (int i = 0; i < a.size(); ++i) CHECK(a.ordinal_of(a[i]) == i);
}

TEST_CASE("index set rejects duplicates") {
  const WaveletIndex idx{0, Kind::Scaling, Orientation::None, 0, 0};
  CHECK_THROWS_AS(IndexSet({idx, idx}), ValidationError);
}

TEST_CASE("resource guard on excessive J") {
  CHECK_THROWS_AS(full_index_set(13, BasisFamily::make(Family::Haar), {}), ResourceError);
}

TEST_CASE("Haar point evaluations") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Haar), 10);
  const WaveletIndex sc{0, Kind::Scaling, Orientation::None, 0, 0};
  CHECK(evaluate_basis_function(sc, t, 0.3, 0.8) == doctest::Approx(1.0));
  const WaveletIndex h{0, Kind::Wavelet, Orientation::Horizontal, 0, 0};
  CHECK(evaluate_basis_function(h, t, 0.25, 0.25) == doctest::Approx(1.0));
  CHECK(evaluate_basis_function(h, t, 0.75, 0.25) == doctest::Approx(-1.0));
  const WaveletIndex v{0, Kind::Wavelet, Orientation::Vertical, 0, 0};
  CHECK(evaluate_basis_function(v, t, 0.25, 0.25) == doctest::Approx(1.0));
  CHECK(evaluate_basis_function(v, t, 0.25, 0.75) == doctest::Approx(-1.0));
  const WaveletIndex d{0, Kind::Wavelet, Orientation::Diagonal, 0, 0};
  CHECK(evaluate_basis_function(d, t, 0.25, 0.25) == doctest::Approx(1.0));
  CHECK(evaluate_basis_function(d, t, 0.75, 0.25) == doctest::Approx(-1.0));
  CHECK(evaluate_basis_function(d, t, 0.75, 0.75) == doctest::Approx(1.0));
}

TEST_CASE("hat basis closed forms") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  CHECK(t.mother_psi(0.5) == doctest::Approx(1.0));
  CHECK(t.mother_psi(0.25) == doctest::Approx(0.5));
  CHECK(t.mother_phi(1.0) == doctest::Approx(1.0));
  CHECK(t.mother_phi(0.5) == doctest::Approx(0.5));
  // normalized 1-D factors: 2^{j/2} psi(2^j x - k)
  CHECK(t.psi1d(1, 0, 0.25) == doctest::Approx(std::sqrt(2.0)));
  CHECK(t.dpsi1d(0, 0, 0.3) == doctest::Approx(2.0));
  CHECK(t.dpsi1d(0, 0, 0.7) == doctest::Approx(-2.0));
}

TEST_CASE("supports") {
  const BasisFamily d4 = BasisFamily::make(Family::Daubechies4);
  const Support1D s = support1d(d4, false, 0, -1);
  CHECK(s.lo == doctest::Approx(-1.0));
  CHECK(s.hi == doctest::Approx(2.0));
  const Support1D w = support1d(d4, true, 2, 1);
  CHECK(w.hi - w.lo == doctest::Approx(3.0 / 4.0));
  CHECK(s.overlaps(w));
  CHECK_FALSE(Support1D{0.0, 0.5}.overlaps(Support1D{0.5, 1.0}));
}

TEST_CASE("Dirichlet restriction counts for the hat family") {
  const BasisFamily hat = BasisFamily::make(Family::HierarchicalHat);
  // J=1, Dirichlet on the bottom edge only: scalings lose ky=-1 (node y=0),
  // x-oriented wavelets keep the y-scaling restriction, y-oriented wavelets
  // survive everywhere.
  const IndexSet set = full_index_set(1, hat, {Edge::Bottom});
  CHECK(set.size() == 6);
  for (int i = 0; i < set.size(); ++i) {
    if (set[i].kind == Kind::Scaling) CHECK(set[i].ky == 0);
  }
  // all four edges Dirichlet at J=1: only V, D survive (interior nodes)
  const IndexSet all4 =
      full_index_set(1, hat, {Edge::Bottom, Edge::Top, Edge::Left, Edge::Right});
  for (int i = 0; i < all4.size(); ++i) CHECK(all4[i].kind == Kind::Wavelet);
}

TEST_CASE("expansion evaluation matches the naive sum") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Daubechies4), 10);
  const IndexSet set = full_index_set(3, t.family, {});
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(set.size());
  for (double& v : c) v = u(rng);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = (u(rng) + 1.0) / 2.0, y = (u(rng) + 1.0) / 2.0;
    double want = 0.0;
    for (int i = 0; i < set.size(); ++i) want += c[i] * evaluate_basis_function(set[i], t, x, y);
    CHECK(evaluate_expansion(c, set, t, x, y) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("projection of zero is zero") {
  for (Family f : {Family::Haar, Family::HierarchicalHat}) {
    const DyadicTable t = build_dyadic_table(BasisFamily::make(f), 10);
    const IndexSet set = full_index_set(2, t.family, {});
    const auto c = project_function([](double, double) { return 0.0; }, set, t);
    for (double v : c) CHECK(v == doctest::Approx(0.0));
  }
}

TEST_CASE("Haar projection of a constant hits only the scaling function") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Haar), 10);
  const IndexSet set = full_index_set(3, t.family, {});
  const auto c = project_function([](double, double) { return 2.5; }, set, t);
  for (int i = 0; i < set.size(); ++i) {
    if (set[i].kind == Kind::Scaling)
      CHECK(c[i] == doctest::Approx(2.5).epsilon(1e-10));
    else
      CHECK(std::abs(c[i]) <= 1e-10);
  }
}

TEST_CASE("Daubechies-4 projection reconstructs f(x,y) = x") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Daubechies4), 10);
  const IndexSet set = full_index_set(4, t.family, {});
  const auto c = project_function([](double x, double) { return x; }, set, t);
  double l2 = 0.0;
  const int n = 64;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = (i + 0.5) / n, y = (j + 0.5) / n;
      const double d = evaluate_expansion(c, set, t, x, y) - x;
      l2 += d * d / (n * n);
    }
  CHECK(std::sqrt(l2) <= 1e-6);
}

TEST_CASE("hat projection interpolates exactly at dyadic nodes") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  const IndexSet set = full_index_set(4, t.family, {});
  auto f = [](double x, double y) { return std::sin(3.0 * x) * (y * y + 0.25); };
  const auto c = project_function(f, set, t);
  const int n = 16;  // grid resolvable at level 4
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = static_cast<double>(i) / n, y = static_cast<double>(j) / n;
      CHECK(evaluate_expansion(c, set, t, x, y) == doctest::Approx(f(x, y)).epsilon(1e-10));
    }
}

TEST_CASE("nestedness: coarse Haar functions reproduce exactly one level up") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Haar), 10);
  const IndexSet coarse = full_index_set(2, t.family, {});
  const IndexSet fine = full_index_set(3, t.family, {});
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> cc(coarse.size());
  for (double& v : cc) v = u(rng);
  auto f = [&](double x, double y) { return evaluate_expansion(cc, coarse, t, x, y); };
  const auto cf = project_function(f, fine, t);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = (u(rng) + 1.0) / 2.0, y = (u(rng) + 1.0) / 2.0;
    CHECK(std::abs(evaluate_expansion(cf, fine, t, x, y) - f(x, y)) <= 1e-10);
  }
}

TEST_CASE("projection input validation") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::Haar), 10);
  const IndexSet set = full_index_set(2, t.family, {});
  CHECK_THROWS_AS(project_function(nullptr, set, t), ValidationError);
  CHECK_THROWS_AS(project_function([](double, double) { return 1.0; }, IndexSet{}, t),
                  ValidationError);
}

TEST_CASE("index set CSV dump") {
  const IndexSet set = full_index_set(1, BasisFamily::make(Family::Haar), {});
  std::ostringstream os;
  dump_index_set_csv(set, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "ordinal,level,kind,orientation,kx,ky");
  std::getline(is, line);
  CHECK(line == "0,0,scaling,none,0,0");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
}
