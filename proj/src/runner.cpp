#include "wavegal/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace wavegal {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file " + path);
  return os;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const UniformGridField& f) {
  std::ofstream os = open_out(path);
  os << "x,y,T\n";
  for (int ix = 0; ix < f.n; ++ix)
    for (int iy = 0; iy < f.n; ++iy)
      os << fmt(f.x(ix)) << ',' << fmt(f.y(iy)) << ',' << fmt(f.at(ix, iy)) << '\n';
  if (!os) throw IoError("failed writing " + path);
}

void write_active_set_csv(const std::string& path, const TransientSolution& sol) {
  std::ofstream os = open_out(path);
  os << "step,ordinal,level,kind,orientation,kx,ky\n";
  for (std::size_t s = 0; s < sol.sets_per_step.size(); ++s) {
    const IndexSet& set = sol.sets_per_step[s];
    for (int i = 0; i < set.size(); ++i) {
      const WaveletIndex& idx = set[i];
      os << (s + 1) << ',' << i << ',' << idx.level << ',' << kind_name(idx.kind) << ','
         << orientation_name(idx.orientation) << ',' << idx.kx << ',' << idx.ky << '\n';
    }
  }
  if (!os) throw IoError("failed writing " + path);
}

void write_diagnostics_csv(const std::string& path, const TransientSolution& sol) {
  std::ofstream os = open_out(path);
  os << "step,t,active_dofs,pcg_iters,pcg_residual,wall_ms\n";
  for (const StepDiagnostics& d : sol.diagnostics)
    os << d.step << ',' << fmt(d.t) << ',' << d.active_dofs << ',' << d.pcg_iters << ','
       << fmt(d.pcg_residual) << ',' << fmt(d.wall_ms) << '\n';
  if (!os) throw IoError("failed writing " + path);
}

struct ReportExtra {
  std::string key;
  std::string value;
};

void write_report(const std::string& path, const ScenarioConfig& cfg,
                  const std::vector<ReportExtra>& extras) {
  std::ofstream os = open_out(path);
  os << canonical_echo(cfg);
  for (const auto& e : extras) os << e.key << '=' << e.value << '\n';
  if (!os) throw IoError("failed writing " + path);
}

}  // namespace

std::string resolve_out_dir(const ScenarioConfig& cfg) {
  const char* env = std::getenv("WAVEGAL_OUT");
  if (env && *env) return env;
  return cfg.out_dir;
}

RunOutcome execute_scenario(const ScenarioConfig& cfg, const DyadicTable& table) {
  RunOutcome out;
  out.cfg = cfg;
  const ProblemDefinition problem = build_problem(cfg);
  const TransientOptions options = build_options(cfg);
  out.solution = run_transient(problem, table, options);
  out.field = sample_wavelet_solution(out.solution, table, cfg.ref_n);
  double acc = 0.0;
  for (int i = 0; i < cfg.ref_n; ++i)
    acc += out.solution.evaluate(table, static_cast<double>(i) / (cfg.ref_n - 1), 0.5);
  out.interface_temperature = acc / cfg.ref_n;
  for (const StepDiagnostics& d : out.solution.diagnostics) out.wall_ms_total += d.wall_ms;
  return out;
}

void cmd_run(const std::string& config_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  validate_config(cfg);
  const std::string dir = resolve_out_dir(cfg);
  ensure_dir(dir);
  const DyadicTable table = build_dyadic_table(BasisFamily::make(family_from_name(cfg.family)),
                                               cfg.q);
  const RunOutcome out = execute_scenario(cfg, table);

  write_field_csv(dir + "/field.csv", out.field);
  write_active_set_csv(dir + "/active_set.csv", out.solution);
  write_diagnostics_csv(dir + "/diagnostics.csv", out.solution);
  std::vector<ReportExtra> extras = {
      {"result.steps", std::to_string(out.solution.diagnostics.size())},
      {"result.final_time", fmt(out.solution.t_final)},
      {"result.active_dofs", std::to_string(out.solution.final_set.size())},
      {"result.interface_temperature", fmt(out.interface_temperature)},
      {"result.wall_ms_total", fmt(out.wall_ms_total)},
  };
  write_report(dir + "/report.txt", cfg, extras);

  if (cfg.dump_stiffness) {
    const ProblemDefinition problem = build_problem(cfg);
    QuadratureRule quad;
    quad.base_level = cfg.J;
    quad.depth = cfg.s;
    quad.rule = quad_rule_from_name(cfg.quad_rule);
    quad.drop_tolerance = cfg.drop_tolerance;
    const SparseMatrix k = assemble_stiffness(out.solution.final_set, problem, table, quad);
    std::ofstream os = open_out(dir + "/K.mtx");
    k.write_matrix_market(os);
  }
}

void cmd_compare(const std::string& config_path) {
  const ScenarioConfig cfg = parse_config_file(config_path);
  validate_config(cfg);
  const std::string dir = resolve_out_dir(cfg);
  ensure_dir(dir);
  const DyadicTable table = build_dyadic_table(BasisFamily::make(family_from_name(cfg.family)),
                                               cfg.q);
  const RunOutcome out = execute_scenario(cfg, table);
  const ProblemDefinition problem = build_problem(cfg);
  const TransientOptions options = build_options(cfg);
  const UniformGridField ref =
      fd_solve_transient(problem, cfg.ref_n, options.grid.dt, options.grid.steps);
  const ErrorNorms err = error_norms(out.field, ref);

  write_field_csv(dir + "/field.csv", out.field);
  write_field_csv(dir + "/reference_field.csv", ref);
  std::vector<ReportExtra> extras = {
      {"result.active_dofs", std::to_string(out.solution.final_set.size())},
      {"result.interface_temperature", fmt(out.interface_temperature)},
      {"error.l2", fmt(err.l2)},
      {"error.h1_semi", fmt(err.h1_semi)},
  };
  write_report(dir + "/report.txt", cfg, extras);
}

void cmd_study(const std::string& config_path, const std::string& vary_spec,
               bool uniform_baseline) {
  ScenarioConfig base = parse_config_file(config_path);
  validate_config(base);
  const auto eq = vary_spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--vary expects eps=v1,v2,... or J=v1,v2,...", -1, "vary");
  const std::string name = vary_spec.substr(0, eq);
  if (name != "eps" && name != "J")
    throw ConfigError("--vary parameter must be eps or J", -1, "vary");
  std::vector<std::string> values;
  {
    std::istringstream vs(vary_spec.substr(eq + 1));
    std::string piece;
    while (std::getline(vs, piece, ',')) values.push_back(piece);
  }
  if (values.empty()) throw ConfigError("--vary needs at least one value", -1, "vary");

  const std::string dir = resolve_out_dir(base);
  ensure_dir(dir);
  std::ofstream os = open_out(dir + "/study.csv");
  os << "param,active_dofs,l2_error,h1_semi_error,wall_ms\n";

  auto one_row = [&](const std::string& label, ScenarioConfig cfg) {
    try {
      validate_config(cfg);
      const DyadicTable table =
          build_dyadic_table(BasisFamily::make(family_from_name(cfg.family)), cfg.q);
      const RunOutcome out = execute_scenario(cfg, table);
      const ProblemDefinition problem = build_problem(cfg);
      const TransientOptions options = build_options(cfg);
      const UniformGridField ref =
          fd_solve_transient(problem, cfg.ref_n, options.grid.dt, options.grid.steps);
      const ErrorNorms err = error_norms(out.field, ref);
      os << label << ',' << out.solution.final_set.size() << ',' << fmt(err.l2) << ','
         << fmt(err.h1_semi) << ',' << fmt(out.wall_ms_total) << '\n';
    } catch (const Error& e) {
      std::cerr << "study run " << label << " failed: " << e.what() << "\n";
      os << label << ",failed,failed,failed,failed\n";
    }
  };

  for (const std::string& v : values) {
    ScenarioConfig cfg = base;
    if (name == "eps") {
      cfg.eps_tol = parse_function("const(" + v + ")")(0, 0, 0);
    } else {
      cfg.J = std::stoi(v);
      if (cfg.ref_n - 1 < (1 << cfg.J)) cfg.ref_n = (1 << cfg.J) + 1;
    }
    one_row(name + "=" + v, cfg);
  }
  if (uniform_baseline) {
    ScenarioConfig cfg = base;
    cfg.adaptive = false;
    one_row("uniform", cfg);
  }
  if (!os) throw IoError("failed writing study.csv");
}

void cmd_dump_basis(const std::string& family, int J) {
  const BasisFamily fam = BasisFamily::make(family_from_name(family));
  if (J < 1 || J > 10) throw ConfigError("J must be in [1,10]", -1, "J");
  const IndexSet set = full_index_set(J, fam, {});
  dump_index_set_csv(set, std::cout);
}

}  // namespace wavegal
