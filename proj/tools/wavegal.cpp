#include <CLI11.hpp>
#include <iostream>

#include "wavegal/runner.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 solver error, 4 I/O error.
int dispatch(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const wavegal::ConfigError& e) {
    std::cerr << "config error";
    if (e.line_number > 0) std::cerr << " (line " << e.line_number << ")";
    if (!e.key.empty()) std::cerr << " [" << e.key << "]";
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const wavegal::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wavegal::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const wavegal::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive wavelet-Galerkin heat conduction solver"};
  app.require_subcommand(1);

  std::string config_path, vary_spec, family;
  int level = 5;
  bool uniform_baseline = false;

  CLI::App* run = app.add_subcommand("run", "execute a scenario");
  run->add_option("config", config_path, "config file")->required();

  CLI::App* study = app.add_subcommand("study", "parameter sweep");
  study->add_option("config", config_path, "config file")->required();
  study->add_option("--vary", vary_spec, "eps=v1,v2,... or J=v1,v2,...")->required();
  study->add_flag("--uniform-baseline", uniform_baseline, "append a uniform-basis row");

  CLI::App* compare = app.add_subcommand("compare", "compare against the FD reference");
  compare->add_option("config", config_path, "config file")->required();

  CLI::App* dump = app.add_subcommand("dump-basis", "dump the full index set as CSV");
  dump->add_option("family", family, "haar|db4|db6|hat")->required();
  dump->add_option("J", level, "maximal level")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return dispatch([&] { wavegal::cmd_run(config_path); });
  if (study->parsed())
    return dispatch([&] { wavegal::cmd_study(config_path, vary_spec, uniform_baseline); });
  if (compare->parsed()) return dispatch([&] { wavegal::cmd_compare(config_path); });
  return dispatch([&] { wavegal::cmd_dump_basis(family, level); });
}
