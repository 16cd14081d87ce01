#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wavegal/reference.hpp"

using namespace wavegal;

namespace {

ProblemDefinition vertical_drop_problem() {
  ProblemDefinition p;
  p.material.geometry.tag = GeometryDescriptor::Tag::Homogeneous;
  p.material.matrix_phase = {0, 1.0, 1.0, ConductivityTensor::isotropic(1.0)};
  p.material.secondary_phase = p.material.matrix_phase;
  p.boundary.on(Edge::Bottom) = EdgeCondition::dirichlet(SpaceTimeFn::constant(1.0));
  p.boundary.on(Edge::Top) = EdgeCondition::dirichlet(SpaceTimeFn::constant(0.0));
  p.t_final = 1.0;
  return p;
}

ProblemDefinition slab_problem(double k1, double k2) {
  ProblemDefinition p = vertical_drop_problem();
  p.material.geometry.tag = GeometryDescriptor::Tag::LayeredSlab;
  p.material.geometry.interface_y = 0.5;
  p.material.matrix_phase.conductivity = ConductivityTensor::isotropic(k1);
  p.material.secondary_phase.conductivity = ConductivityTensor::isotropic(k2);
  return p;
}

ProblemDefinition fgm_problem(double km, double alpha) {
  ProblemDefinition p = vertical_drop_problem();
  p.material.geometry.tag = GeometryDescriptor::Tag::GradedLayer;
  p.material.geometry.y0 = 0.5;
  p.material.geometry.alpha = alpha;
  p.material.matrix_phase.conductivity = ConductivityTensor::isotropic(km);
  p.material.secondary_phase.conductivity = ConductivityTensor::isotropic(km);
  return p;
}

// every-other-node restriction of a (2m+1)-node field to (m+1) nodes
UniformGridField coarsen(const UniformGridField& f) {
  UniformGridField c = UniformGridField::zeros((f.n + 1) / 2);
  for (int ix = 0; ix < c.n; ++ix)
    for (int iy = 0; iy < c.n; ++iy) c.at(ix, iy) = f.at(2 * ix, 2 * iy);
  return c;
}

}  // namespace

TEST_CASE("grid field basics") {
  UniformGridField f = UniformGridField::zeros(5);
  CHECK(f.h() == doctest::Approx(0.25));
  CHECK(f.x(4) == doctest::Approx(1.0));
  CHECK(f.values.size() == 25);
  CHECK_THROWS_AS(UniformGridField::zeros(2), ValidationError);
}

TEST_CASE("homogeneous steady solve reproduces the linear profile") {
  const UniformGridField f = fd_solve_steady(vertical_drop_problem(), 33);
  for (int ix = 0; ix < f.n; ++ix)
    for (int iy = 0; iy < f.n; ++iy)
      CHECK(std::abs(f.at(ix, iy) - (1.0 - f.y(iy))) <= 1e-6);
}

TEST_CASE("slab steady solve is exact when the interface lies on a face") {
  // n = 34: the interface y = 1/2 sits on a control-volume face, where the
  // harmonic mean reproduces the exact interface condition.
  const UniformGridField f = fd_solve_steady(slab_problem(1.0, 10.0), 34);
  for (int ix = 0; ix < f.n; ++ix)
    for (int iy = 0; iy < f.n; ++iy)
      CHECK(std::abs(f.at(ix, iy) - analytic_slab_steady(f.y(iy), 1.0, 10.0, 0.5)) <= 1e-10);
}

TEST_CASE("slab steady interface value converges at odd n") {
  const UniformGridField f33 = fd_solve_steady(slab_problem(1.0, 10.0), 33);
  const UniformGridField f65 = fd_solve_steady(slab_problem(1.0, 10.0), 65);
  const double want = 1.0 / 11.0;
  CHECK(std::abs(f33.at(16, 16) - want) <= 5e-3);
  CHECK(std::abs(f65.at(32, 32) - want) < std::abs(f33.at(16, 16) - want));
}

TEST_CASE("fgm steady solve approaches the resistance profile") {
  const UniformGridField f = fd_solve_steady(fgm_problem(1.0, 1.0), 65);
  const double want = std::log(2.0) / (1.0 + std::log(2.0));
  CHECK(std::abs(f.at(32, 32) - want) <= 1e-3);
}

TEST_CASE("transient solve relaxes toward the steady state") {
  const UniformGridField f = fd_solve_transient(slab_problem(1.0, 10.0), 33, 0.5, 40);
  CHECK(std::abs(f.at(16, 16) - 1.0 / 11.0) <= 5e-3);
  CHECK_THROWS_AS(fd_solve_transient(slab_problem(1.0, 10.0), 15, 0.1, 1), ValidationError);
}

TEST_CASE("analytic slab profile") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double y = u(rng);
    CHECK(analytic_slab_steady(y, 2.0, 2.0, 0.5) == doctest::Approx(1.0 - y).epsilon(1e-12));
  }
  CHECK(analytic_slab_steady(0.5, 1.0, 10.0, 0.5) == doctest::Approx(1.0 / 11.0));
  CHECK(analytic_slab_steady(0.5, 10.0, 1.0, 0.5) == doctest::Approx(10.0 / 11.0));
  CHECK(analytic_slab_steady(0.0, 1.0, 10.0, 0.5) == doctest::Approx(1.0));
  CHECK(analytic_slab_steady(1.0, 1.0, 10.0, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("analytic fgm profile") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double y = u(rng);
    CHECK(analytic_fgm_steady(y, u(rng) + 0.1, 0.0, 0.5) == doctest::Approx(1.0 - y).epsilon(1e-12));
  }
  const double want = std::log(2.0) / (1.0 + std::log(2.0));
  CHECK(analytic_fgm_steady(0.5, 1.0, 1.0, 0.5) == doctest::Approx(want).epsilon(1e-12));

  // flux times total resistance is one by construction
  for (int i = 0; i < 20; ++i) {
    const double km = u(rng), alpha = u(rng), y0 = 0.5;
    const double r_low = y0 / km;
    const double r_up = (std::log(1.0 + alpha) - std::log(1.0 + alpha * (2.0 * y0 - 1.0))) /
                        (2.0 * alpha * km);
    const double q = (1.0 - analytic_fgm_steady(y0, km, alpha, y0)) / r_low;
    CHECK(q * (r_low + r_up) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("fgm profile matches an independent resistance quadrature") {
  // Simpson integration of 1/k against the closed-form resistance profile
  const double km = 1.3, alpha = 0.8, y0 = 0.5;
  auto invk = [&](double y) {
    return y < y0 ? 1.0 / km : 1.0 / (km * (1.0 + alpha * (2.0 * y - 1.0)));
  };
  auto resist = [&](double a, double b) {
    const int m = 2000;
    const double h = (b - a) / m;
    double s = invk(a) + invk(b);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * invk(a + i * h);
    return s * h / 3.0;
  };
  const double total = resist(0.0, y0) + resist(y0, 1.0);
  for (int i = 1; i < 40; ++i) {
    const double y = static_cast<double>(i) / 40.0;
    const double want = 1.0 - (y <= y0 ? resist(0.0, y)
                                       : resist(0.0, y0) + resist(y0, y)) /
                                  total;
    CHECK(analytic_fgm_steady(y, km, alpha, y0) == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("analytic profiles satisfy flux constancy") {
  const double delta = 3e-5;
  auto check_flux = [&](auto T, auto k, double q_want) {
    for (int i = 0; i < 1000; ++i) {
      const double y = 0.01 + 0.98 * i / 999.0;
      if (std::abs(y - 0.5) < 2.0 * delta) continue;  // material kink
      const double dT = (T(y + delta) - T(y - delta)) / (2.0 * delta);
      CHECK(std::abs(-k(y) * dT - q_want) <= 1e-8);
    }
  };
  const double q_slab = 1.0 / (0.5 / 1.0 + 0.5 / 10.0);
  check_flux([](double y) { return analytic_slab_steady(y, 1.0, 10.0, 0.5); },
             [](double y) { return y >= 0.5 ? 10.0 : 1.0; }, q_slab);
  const double q_fgm = 1.0 / (0.5 + 0.5 * std::log(2.0));
  check_flux([](double y) { return analytic_fgm_steady(y, 1.0, 1.0, 0.5); },
             [](double y) { return y < 0.5 ? 1.0 : 1.0 + (2.0 * y - 1.0); }, q_fgm);
}

TEST_CASE("fd oracle grid self-convergence") {
  const ProblemDefinition p = fgm_problem(1.0, 1.0);
  const UniformGridField f129 = fd_solve_steady(p, 129);
  const UniformGridField f257 = fd_solve_steady(p, 257);
  const UniformGridField f513 = fd_solve_steady(p, 513);
  const double d12 = error_norms(f129, coarsen(f257)).l2;
  const double d23 = error_norms(f257, coarsen(f513)).l2;
  CHECK(d23 < d12);
  CHECK(d12 <= 4.0 * d23 * 1.05);
}

TEST_CASE("error norms") {
  UniformGridField a = UniformGridField::zeros(17);
  UniformGridField b = UniformGridField::zeros(17);
  const ErrorNorms zero = error_norms(a, b);
  CHECK(zero.l2 == 0.0);
  CHECK(zero.h1_semi == 0.0);

  for (double& v : a.values) v = 1.0;
  const ErrorNorms one = error_norms(a, b);
  CHECK(one.l2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.h1_semi == doctest::Approx(0.0));

  UniformGridField c = UniformGridField::zeros(9);
  CHECK_THROWS_AS(error_norms(a, c), DimensionError);
}

TEST_CASE("hat interpolant of the linear profile has negligible error") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  const IndexSet set = full_index_set(3, t.family, {});
  const auto coeffs = project_function([](double, double y) { return 1.0 - y; }, set, t);
  const int n = 33;
  UniformGridField a = UniformGridField::zeros(n);
  UniformGridField b = UniformGridField::zeros(n);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      a.at(ix, iy) = evaluate_expansion(coeffs, set, t, a.x(ix), a.y(iy));
      b.at(ix, iy) = 1.0 - b.y(iy);
    }
  const ErrorNorms e = error_norms(a, b);
  CHECK(e.l2 <= 1e-8);
  CHECK(e.h1_semi <= 1e-6);
}

TEST_CASE("sampling requires sufficient grid resolution") {
  const DyadicTable t = build_dyadic_table(BasisFamily::make(Family::HierarchicalHat), 10);
  TransientSolution sol;
  sol.final_set = full_index_set(5, t.family, {});
  sol.final_coeffs.assign(sol.final_set.size(), 0.0);
  CHECK_THROWS_AS(sample_wavelet_solution(sol, t, 17), ResolutionError);
  const UniformGridField f = sample_wavelet_solution(sol, t, 33);
  CHECK(f.n == 33);
  for (double v : f.values) CHECK(v == 0.0);
}
