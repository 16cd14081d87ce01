#pragma once

#include <array>
#include <string>
#include <vector>

#include "wavegal/mra.hpp"
#include "wavegal/problem.hpp"
#include "wavegal/sparse.hpp"

namespace wavegal {

enum class QuadRule { Midpoint, TwoPointGauss };

QuadRule quad_rule_from_name(const std::string& name);
const char* quad_rule_name(QuadRule r);

// Composite rule on the global dyadic grid of spacing 2^{-(base_level + depth)}.
struct QuadratureRule {
  int base_level = 5;  // J of the discretization
  int depth = 2;       // oversampling depth s
  QuadRule rule = QuadRule::Midpoint;
  double drop_tolerance = 0.0;

  double spacing() const { return 1.0 / static_cast<double>(1L << (base_level + depth)); }
  int cells() const { return 1 << (base_level + depth); }

  void validate() const {
    if (depth < 1) throw ValidationError("quadrature depth s must be >= 1");
    if (base_level + depth > 24) throw ValidationError("quadrature grid too fine");
  }
};

// Coarse interpolant T_g carrying inhomogeneous Dirichlet data into the
// domain; the homogeneous wavelet expansion approximates T - T_g.
class LiftingField {
public:
  LiftingField() = default;

  // Built from the Dirichlet edges of the boundary spec.
  static LiftingField build(const ProblemDefinition& problem);

  bool zero() const { return zero_; }
  bool time_dependent() const { return time_dependent_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double value(double x, double y, double t) const;
  std::array<double, 2> gradient(double x, double y, double t) const;
  double time_derivative(double x, double y, double t) const;

private:
  bool zero_ = true;
  bool time_dependent_ = false;
  std::array<bool, 4> has_edge_{{false, false, false, false}};
  std::array<SpaceTimeFn, 4> edge_data_;  // indexed by Edge
  std::vector<std::string> warnings_;
};

LiftingField build_lifting(const ProblemDefinition& problem);

// M_lm = int rho c_p psi_m psi_l
SparseMatrix assemble_mass(const IndexSet& set, const ProblemDefinition& problem,
                           const DyadicTable& table, const QuadratureRule& quad);

// K_lm = int grad(psi_l)^T K grad(psi_m) + Robin surface term
SparseMatrix assemble_stiffness(const IndexSet& set, const ProblemDefinition& problem,
                                const DyadicTable& table, const QuadratureRule& quad);

// f_l(t) = int f psi_l + Neumann/Robin edge terms - a(T_g, psi_l) - m(dt T_g, psi_l)
std::vector<double> assemble_load(const IndexSet& set, const ProblemDefinition& problem,
                                  const DyadicTable& table, const QuadratureRule& quad, double t,
                                  const LiftingField& lifting);

}  // namespace wavegal
