#pragma once

#include <array>
#include <functional>
#include <set>
#include <string>
#include <utility>

#include "wavegal/errors.hpp"

namespace wavegal {

// Symmetric 2x2 conductivity tensor, nondimensionalized by k_ref.
struct ConductivityTensor {
  double kxx = 1.0;
  double kxy = 0.0;
  double kyy = 1.0;

  static ConductivityTensor isotropic(double k) { return {k, 0.0, k}; }

  bool spd() const { return kxx > 0.0 && kxx * kyy - kxy * kxy > 0.0; }
  double eig_min() const;
  double eig_max() const;
  bool isotropic_diagonal() const { return kxy == 0.0; }
};

struct MaterialPhase {
  int id = 0;
  double rho = 1.0;
  double cp = 1.0;
  ConductivityTensor conductivity;

  void validate() const {
    if (rho <= 0.0 || cp <= 0.0) throw ValidationError("material phase requires rho > 0 and cp > 0");
    if (!conductivity.spd()) throw ValidationError("material phase conductivity is not SPD");
  }
};

// Geometry variants on the unit square.
struct GeometryDescriptor {
  enum class Tag { Homogeneous, LayeredSlab, CircularInclusion, GradedLayer };
  Tag tag = Tag::Homogeneous;
  double interface_y = 0.5;          // LayeredSlab
  double cx = 0.5, cy = 0.5, r = 0.2;  // CircularInclusion
  double y0 = 0.5;                   // GradedLayer
  double alpha = 0.0;                // GradedLayer grading intensity

  void validate() const;
};

// Pointwise material data. Tie-breaks: closed inclusion disc, closed upper
// layer (y >= interface belongs to the upper/graded phase).
struct MaterialMap {
  GeometryDescriptor geometry;
  MaterialPhase matrix_phase;
  MaterialPhase secondary_phase;  // layer 2 / inclusion / graded-layer base

  ConductivityTensor conductivity_at(double x, double y) const;
  int phase_of(double x, double y) const;
  double rho_cp_at(double x, double y) const;

  // (k_min, k_max) over a samples x samples node grid; throws ValidationError
  // naming the offending point if any sampled tensor fails the SPD check.
  std::pair<double, double> ellipticity_bounds(int samples_per_axis) const;

  // True when the conductivity depends on y only and has no off-diagonal
  // entry; assembly exploits this with separable 1-D quadratures.
  bool separable_in_y() const;

  void validate() const;
};

// Space-time scalar function f(x,y,t). The time_dependent flag lets callers
// cache assemblies when all data are stationary.
struct SpaceTimeFn {
  std::function<double(double, double, double)> f;
  bool time_dependent = false;

  double operator()(double x, double y, double t) const { return f ? f(x, y, t) : 0.0; }
  explicit operator bool() const { return static_cast<bool>(f); }

  static SpaceTimeFn zero() { return {nullptr, false}; }
  static SpaceTimeFn constant(double c) {
    if (c == 0.0) return zero();
    return {[c](double, double, double) { return c; }, false};
  }
};

enum class Edge { Bottom = 0, Right = 1, Top = 2, Left = 3 };

inline const char* edge_name(Edge e) {
  switch (e) {
    case Edge::Bottom: return "bottom";
    case Edge::Right: return "right";
    case Edge::Top: return "top";
    case Edge::Left: return "left";
  }
  return "?";
}

enum class BcKind { Dirichlet, Neumann, Robin };

struct EdgeCondition {
  BcKind kind = BcKind::Neumann;
  SpaceTimeFn data;        // g_D or g_N
  double robin_h = 0.0;    // Robin only
  SpaceTimeFn robin_t_inf; // Robin only

  static EdgeCondition dirichlet(SpaceTimeFn g) { return {BcKind::Dirichlet, std::move(g), 0.0, {}}; }
  static EdgeCondition neumann(SpaceTimeFn g) { return {BcKind::Neumann, std::move(g), 0.0, {}}; }
  static EdgeCondition robin(double h, SpaceTimeFn t_inf) {
    if (h < 0.0) throw ValidationError("Robin coefficient h must be >= 0");
    return {BcKind::Robin, {}, h, std::move(t_inf)};
  }
};

// Per-edge boundary conditions for the four edges of the unit square. The
// edges partition the boundary exactly once by construction.
struct BoundarySpec {
  std::array<EdgeCondition, 4> edges;  // indexed by Edge

  const EdgeCondition& on(Edge e) const { return edges[static_cast<int>(e)]; }
  EdgeCondition& on(Edge e) { return edges[static_cast<int>(e)]; }

  std::set<Edge> dirichlet_edges() const;
  bool any_dirichlet() const { return !dirichlet_edges().empty(); }
  bool dirichlet_time_dependent() const;
};

struct ProblemDefinition {
  MaterialMap material;
  BoundarySpec boundary;
  SpaceTimeFn source;
  std::function<double(double, double)> initial;
  double t_final = 1.0;

  void validate() const {
    material.validate();
    if (t_final <= 0.0) throw ValidationError("t_final must be > 0");
  }
};

// Free-function spellings of the pointwise material queries.
ConductivityTensor evaluate_conductivity(const MaterialMap& map, double x, double y);
int phase_of(const MaterialMap& map, double x, double y);
std::pair<double, double> ellipticity_bounds(const MaterialMap& map, int samples_per_axis);

}  // namespace wavegal
