#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wavegal/config.hpp"
#include "wavegal/reference.hpp"

namespace wavegal {

// Output directory resolution: WAVEGAL_OUT env var wins over the config.
std::string resolve_out_dir(const ScenarioConfig& cfg);

// Full scenario run: field.csv, active_set.csv, diagnostics.csv, report.txt,
// optional K.mtx.
void cmd_run(const std::string& config_path);

// Parameter sweep; writes study.csv (param,active_dofs,l2_error,
// h1_semi_error,wall_ms) plus per-run subdirectories. vary_spec is
// "eps=v1,v2,..." or "J=v1,v2,...".
void cmd_study(const std::string& config_path, const std::string& vary_spec,
               bool uniform_baseline);

// Wavelet vs finite-difference reference: both sampled fields plus an error
// report.
void cmd_compare(const std::string& config_path);

// Index-set dump of the full basis at level J to stdout.
void cmd_dump_basis(const std::string& family, int J);

// Shared by run/compare/study internals; exposed for tests.
struct RunOutcome {
  ScenarioConfig cfg;
  TransientSolution solution;
  UniformGridField field;
  double interface_temperature = 0.0;
  double wall_ms_total = 0.0;
};
RunOutcome execute_scenario(const ScenarioConfig& cfg, const DyadicTable& table);

}  // namespace wavegal
