#include "wavegal/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "wavegal/assembly.hpp"

namespace wavegal {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value '" + v + "' for " + key, line, key);
  }
}

int parse_int(const std::string& v, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value '" + v + "' for " + key, line, key);
  }
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("invalid boolean value '" + v + "' for " + key, line, key);
}

void apply_key(ScenarioConfig& c, const std::string& key, const std::string& v, int line) {
  auto d = [&] { return parse_double(v, key, line); };
  auto i = [&] { return parse_int(v, key, line); };
  auto b = [&] { return parse_bool(v, key, line); };
  if (key == "scenario.tag") c.scenario = v;
  else if (key == "material.k1") c.k1 = d();
  else if (key == "material.k2") c.k2 = d();
  else if (key == "material.km") c.km = d();
  else if (key == "material.kinc") c.kinc = d();
  else if (key == "material.alpha") c.alpha = d();
  else if (key == "material.rho") c.rho = d();
  else if (key == "material.cp") c.cp = d();
  else if (key == "basis.family") c.family = v;
  else if (key == "basis.J") c.J = i();
  else if (key == "basis.q") c.q = i();
  else if (key == "quadrature.rule") c.quad_rule = v;
  else if (key == "quadrature.s") c.s = i();
  else if (key == "quadrature.drop_tolerance") c.drop_tolerance = d();
  else if (key == "adaptivity.enabled") c.adaptive = b();
  else if (key == "adaptivity.eps_tol") c.eps_tol = d();
  else if (key == "adaptivity.radius") c.radius = i();
  else if (key == "adaptivity.stride") c.stride = i();
  else if (key == "adaptivity.include_parents") c.include_parents = b();
  else if (key == "adaptivity.include_children") c.include_children = b();
  else if (key == "time.dt") c.dt = d();
  else if (key == "time.t_final") c.t_final = d();
  else if (key == "pcg.rel_tol") c.pcg_rel_tol = d();
  else if (key == "pcg.max_iter") c.pcg_max_iter = i();
  else if (key == "pcg.precond") c.precond = v;
  else if (key == "output.dir") c.out_dir = v;
  else if (key == "output.dump_stiffness") c.dump_stiffness = b();
  else if (key == "reference.n") c.ref_n = i();
  else if (key == "problem.bc_bottom") c.bc_bottom = v;
  else if (key == "problem.bc_top") c.bc_top = v;
  else if (key == "problem.bc_left") c.bc_left = v;
  else if (key == "problem.bc_right") c.bc_right = v;
  else if (key == "problem.source") c.source = v;
  else if (key == "problem.initial") c.initial = v;
  else throw ConfigError("unknown configuration key '" + key + "'", line, key);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", lineno);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", lineno);
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    // Dotted keys bypass the current section, so echoes re-parse directly.
    if (key.find('.') == std::string::npos) {
      if (section.empty()) throw ConfigError("key '" + key + "' outside any section", lineno, key);
      key = section + "." + key;
    }
    apply_key(cfg, key, value, lineno);
  }
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_echo(const ScenarioConfig& c) {
  std::map<std::string, std::string> kv;
  char buf[64];
  auto put_d = [&](const std::string& k, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    kv[k] = buf;
  };
  auto put_i = [&](const std::string& k, int v) { kv[k] = std::to_string(v); };
  auto put_b = [&](const std::string& k, bool v) { kv[k] = v ? "true" : "false"; };
  kv["scenario.tag"] = c.scenario;
  put_d("material.k1", c.k1);
  put_d("material.k2", c.k2);
  put_d("material.km", c.km);
  put_d("material.kinc", c.kinc);
  put_d("material.alpha", c.alpha);
  put_d("material.rho", c.rho);
  put_d("material.cp", c.cp);
  kv["basis.family"] = c.family;
  put_i("basis.J", c.J);
  put_i("basis.q", c.q);
  kv["quadrature.rule"] = c.quad_rule;
  put_i("quadrature.s", c.s);
  put_d("quadrature.drop_tolerance", c.drop_tolerance);
  put_b("adaptivity.enabled", c.adaptive);
  put_d("adaptivity.eps_tol", c.eps_tol);
  put_i("adaptivity.radius", c.radius);
  put_i("adaptivity.stride", c.stride);
  put_b("adaptivity.include_parents", c.include_parents);
  put_b("adaptivity.include_children", c.include_children);
  put_d("time.dt", c.dt);
  put_d("time.t_final", c.t_final);
  put_d("pcg.rel_tol", c.pcg_rel_tol);
  put_i("pcg.max_iter", c.pcg_max_iter);
  kv["pcg.precond"] = c.precond;
  kv["output.dir"] = c.out_dir;
  put_b("output.dump_stiffness", c.dump_stiffness);
  put_i("reference.n", c.ref_n);
  kv["problem.bc_bottom"] = c.bc_bottom;
  kv["problem.bc_top"] = c.bc_top;
  kv["problem.bc_left"] = c.bc_left;
  kv["problem.bc_right"] = c.bc_right;
  kv["problem.source"] = c.source;
  kv["problem.initial"] = c.initial;
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

SpaceTimeFn parse_function(const std::string& expr) {
  const std::string e = trim(expr);
  if (e.empty()) return SpaceTimeFn::zero();
  struct Factor {
    enum { Const, Ramp, XPoly, YPoly } type;
    std::vector<double> c;
  };
  auto factors = std::make_shared<std::vector<Factor>>();
  bool time_dep = false;
  std::size_t pos = 0;
  while (pos < e.size()) {
    auto star = e.find('*', pos);
    if (star == std::string::npos) star = e.size();
    const std::string tok = trim(e.substr(pos, star - pos));
    pos = star + 1;
    const auto open = tok.find('(');
    if (open == std::string::npos || tok.back() != ')')
      throw ConfigError("function factor '" + tok + "' is not name(args)");
    const std::string name = trim(tok.substr(0, open));
    const std::string args = tok.substr(open + 1, tok.size() - open - 2);
    std::vector<double> c;
    std::istringstream as(args);
    std::string piece;
    while (std::getline(as, piece, ',')) c.push_back(parse_double(trim(piece), name, -1));
    Factor f;
    f.c = std::move(c);
    if (name == "const") {
      if (f.c.size() != 1) throw ConfigError("const() takes one argument");
      f.type = Factor::Const;
    } else if (name == "ramp") {
      if (f.c.size() != 2) throw ConfigError("ramp() takes two arguments");
      f.type = Factor::Ramp;
      if (f.c[1] != 0.0) time_dep = true;
    } else if (name == "xpoly") {
      if (f.c.empty()) throw ConfigError("xpoly() needs coefficients");
      f.type = Factor::XPoly;
    } else if (name == "ypoly") {
      if (f.c.empty()) throw ConfigError("ypoly() needs coefficients");
      f.type = Factor::YPoly;
    } else {
      throw ConfigError("unknown function factor '" + name + "'");
    }
    factors->push_back(std::move(f));
  }
  SpaceTimeFn fn;
  fn.time_dependent = time_dep;
  fn.f = [factors](double x, double y, double t) {
    double prod = 1.0;
    for (const auto& f : *factors) {
      switch (f.type) {
        case 0: prod *= f.c[0]; break;
        case 1: prod *= f.c[0] + f.c[1] * t; break;
        case 2: {
          double acc = 0.0;
          for (std::size_t i = f.c.size(); i-- > 0;) acc = acc * x + f.c[i];
          prod *= acc;
          break;
        }
        default: {
          double acc = 0.0;
          for (std::size_t i = f.c.size(); i-- > 0;) acc = acc * y + f.c[i];
          prod *= acc;
          break;
        }
      }
    }
    return prod;
  };
  return fn;
}

namespace {

EdgeCondition parse_edge(const std::string& spec, const std::string& key) {
  const std::string s = trim(spec);
  const auto sp = s.find_first_of(" \t");
  const std::string kind = sp == std::string::npos ? s : s.substr(0, sp);
  const std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp));
  if (kind == "dirichlet") return EdgeCondition::dirichlet(parse_function(rest));
  if (kind == "neumann") return EdgeCondition::neumann(parse_function(rest));
  if (kind == "robin") {
    const auto sp2 = rest.find_first_of(" \t");
    const std::string hs = sp2 == std::string::npos ? rest : rest.substr(0, sp2);
    const std::string fn = sp2 == std::string::npos ? "" : trim(rest.substr(sp2));
    const double h = parse_double(hs, key, -1);
    if (h < 0.0) throw ConfigError("Robin coefficient must be >= 0 in " + key, -1, key);
    return EdgeCondition::robin(h, parse_function(fn));
  }
  throw ConfigError("unknown boundary kind '" + kind + "' in " + key, -1, key);
}

void require(bool ok, const std::string& msg, const std::string& key) {
  if (!ok) throw ConfigError(msg, -1, key);
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
  require(c.scenario == "slab" || c.scenario == "inclusion" || c.scenario == "fgm" ||
              c.scenario == "custom",
          "scenario.tag must be slab|inclusion|fgm|custom", "scenario.tag");
  try {
    family_from_name(c.family);
  } catch (const Error&) {
    throw ConfigError("unknown basis family '" + c.family + "'", -1, "basis.family");
  }
  require(c.J >= 1 && c.J <= 10, "J must be in [1,10]", "basis.J");
  require(c.q >= 4 && c.q <= 14, "q must be in [4,14]", "basis.q");
  try {
    quad_rule_from_name(c.quad_rule);
  } catch (const Error&) {
    throw ConfigError("unknown quadrature rule '" + c.quad_rule + "'", -1, "quadrature.rule");
  }
  require(c.s >= 1 && c.s + c.J <= 24, "quadrature depth s out of range", "quadrature.s");
  require(c.drop_tolerance >= 0.0, "drop_tolerance must be >= 0", "quadrature.drop_tolerance");
  require(c.eps_tol >= 0.0, "eps_tol must be >= 0", "adaptivity.eps_tol");
  require(c.radius >= 0, "radius must be >= 0", "adaptivity.radius");
  require(c.stride >= 1, "stride must be >= 1", "adaptivity.stride");
  require(c.dt > 0.0, "dt must be > 0", "dt");
  require(c.t_final > 0.0, "t_final must be > 0", "time.t_final");
  require(c.pcg_rel_tol > 0.0, "pcg rel_tol must be > 0", "pcg.rel_tol");
  require(c.pcg_max_iter >= 0, "pcg max_iter must be >= 0", "pcg.max_iter");
  require(c.precond == "jacobi" || c.precond == "level_scaled",
          "precond must be jacobi|level_scaled", "pcg.precond");
  require(c.ref_n >= 17, "reference n must be >= 17 nodes", "reference.n");
  require(c.ref_n - 1 >= (1 << c.J), "reference n must resolve 2^J cells", "reference.n");
  require(c.k1 > 0.0 && c.k2 > 0.0 && c.km > 0.0 && c.kinc > 0.0,
          "conductivities must be > 0", "material.k1");
  require(c.rho > 0.0 && c.cp > 0.0, "rho and cp must be > 0", "material.rho");
  require(1.0 + c.alpha > 0.0, "alpha grading must keep k positive", "material.alpha");
  if (c.scenario == "custom") {
    parse_edge(c.bc_bottom, "problem.bc_bottom");
    parse_edge(c.bc_top, "problem.bc_top");
    parse_edge(c.bc_left, "problem.bc_left");
    parse_edge(c.bc_right, "problem.bc_right");
    parse_function(c.source);
    parse_function(c.initial);
  }
}

ProblemDefinition build_problem(const ScenarioConfig& c) {
  validate_config(c);
  ProblemDefinition p;
  p.t_final = c.t_final;
  auto iso = [&](double k, int id) {
    MaterialPhase ph;
    ph.id = id;
    ph.rho = c.rho;
    ph.cp = c.cp;
    ph.conductivity = ConductivityTensor::isotropic(k);
    return ph;
  };
  auto dirichlet_const = [](double v) {
    return EdgeCondition::dirichlet(SpaceTimeFn::constant(v));
  };
  if (c.scenario == "slab") {
    p.material.geometry.tag = GeometryDescriptor::Tag::LayeredSlab;
    p.material.geometry.interface_y = 0.5;
    p.material.matrix_phase = iso(c.k1, 0);
    p.material.secondary_phase = iso(c.k2, 1);
    p.boundary.on(Edge::Bottom) = dirichlet_const(1.0);
    p.boundary.on(Edge::Top) = dirichlet_const(0.0);
  } else if (c.scenario == "inclusion") {
    p.material.geometry.tag = GeometryDescriptor::Tag::CircularInclusion;
    p.material.matrix_phase = iso(c.km, 0);
    p.material.secondary_phase = iso(c.kinc, 1);
    p.boundary.on(Edge::Left) = dirichlet_const(1.0);
    p.boundary.on(Edge::Right) = dirichlet_const(0.0);
  } else if (c.scenario == "fgm") {
    p.material.geometry.tag = GeometryDescriptor::Tag::GradedLayer;
    p.material.geometry.y0 = 0.5;
    p.material.geometry.alpha = c.alpha;
    p.material.matrix_phase = iso(c.km, 0);
    p.material.secondary_phase = iso(c.km, 1);
    p.boundary.on(Edge::Bottom) = dirichlet_const(1.0);
    p.boundary.on(Edge::Top) = dirichlet_const(0.0);
  } else {
    p.material.geometry.tag = GeometryDescriptor::Tag::Homogeneous;
    p.material.matrix_phase = iso(c.km, 0);
    p.material.secondary_phase = iso(c.km, 1);
    p.boundary.on(Edge::Bottom) = parse_edge(c.bc_bottom, "problem.bc_bottom");
    p.boundary.on(Edge::Top) = parse_edge(c.bc_top, "problem.bc_top");
    p.boundary.on(Edge::Left) = parse_edge(c.bc_left, "problem.bc_left");
    p.boundary.on(Edge::Right) = parse_edge(c.bc_right, "problem.bc_right");
    p.source = parse_function(c.source);
    if (!c.initial.empty()) {
      const SpaceTimeFn u0 = parse_function(c.initial);
      p.initial = [u0](double x, double y) { return u0(x, y, 0.0); };
    }
  }
  p.validate();
  return p;
}

TransientOptions build_options(const ScenarioConfig& c) {
  validate_config(c);
  TransientOptions o;
  o.grid.dt = c.dt;
  o.grid.steps = std::max(1, static_cast<int>(std::ceil(c.t_final / c.dt - 1e-9)));
  o.pcg.rel_tol = c.pcg_rel_tol;
  o.pcg.max_iter = c.pcg_max_iter;
  o.pcg.precond = c.precond == "jacobi" ? Precond::Jacobi : Precond::LevelScaled;
  o.policy.enabled = c.adaptive;
  o.policy.eps_tol = c.eps_tol;
  o.policy.radius = c.radius;
  o.policy.stride = c.stride;
  o.policy.include_parents = c.include_parents;
  o.policy.include_children = c.include_children;
  o.policy.max_level_J = c.J;
  o.quad_rule = quad_rule_from_name(c.quad_rule);
  o.quad_depth = c.s;
  o.drop_tolerance = c.drop_tolerance;
  return o;
}

}  // namespace wavegal
