#pragma once

#include <string>

#include "wavegal/problem.hpp"
#include "wavegal/timestepper.hpp"

namespace wavegal {

// Flat INI-style scenario configuration. Unset keys keep their defaults; the
// canonical echo uses dotted section.key lines, which the parser also
// accepts, so echoes round-trip.
struct ScenarioConfig {
  std::string scenario = "slab";  // slab | inclusion | fgm | custom

  // material (defaults are our choices; the paper fixes none)
  double k1 = 1.0, k2 = 10.0;   // slab layers
  double km = 1.0, kinc = 10.0; // inclusion / graded base and inclusion
  double alpha = 1.0;           // grading intensity
  double rho = 1.0, cp = 1.0;

  std::string family = "hat";
  int J = 5;
  int q = 10;

  std::string quad_rule = "midpoint";
  int s = 2;
  double drop_tolerance = 0.0;

  bool adaptive = true;
  double eps_tol = 1e-3;
  int radius = 1;
  int stride = 1;
  bool include_parents = true;
  bool include_children = true;

  double dt = 1e-2;
  double t_final = 0.5;

  double pcg_rel_tol = 1e-10;
  int pcg_max_iter = 0;
  std::string precond = "jacobi";

  std::string out_dir = "out";
  bool dump_stiffness = false;

  int ref_n = 65;  // reference grid nodes per axis

  // custom scenario data (function vocabulary strings)
  std::string bc_bottom = "dirichlet const(1)";
  std::string bc_top = "dirichlet const(0)";
  std::string bc_left = "neumann";
  std::string bc_right = "neumann";
  std::string source = "";
  std::string initial = "";

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// Sorted `section.key=value` lines; parses back to an equal configuration.
std::string canonical_echo(const ScenarioConfig& cfg);

// Throws ConfigError naming the offending key.
void validate_config(const ScenarioConfig& cfg);

// Closed function vocabulary: '*'-separated factors const(c), ramp(a,b)
// (a + b t), xpoly(c0,c1,...), ypoly(c0,c1,...).
SpaceTimeFn parse_function(const std::string& expr);

// Instantiate the scenario problem and solver options.
ProblemDefinition build_problem(const ScenarioConfig& cfg);
TransientOptions build_options(const ScenarioConfig& cfg);

}  // namespace wavegal
