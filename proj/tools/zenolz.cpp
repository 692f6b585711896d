// zenolz — Landau-Zener sweeps stabilized by measurement-induced (Zeno)
// relaxation: discrete projective model, mean-field and exact Lindblad
// solvers, majority-vote readout, and the minimum-sweep-time search.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "zenolz/config.hpp"
#include "zenolz/errors.hpp"
#include "zenolz/runner.hpp"
#include "zenolz/version.hpp"

namespace {

int run_mode(zenolz::RunMode mode, const std::string& config_path, const std::string& out_dir,
             int workers, bool seedless) {
  using namespace zenolz;
  try {
    RunConfig cfg = config_path.empty() ? default_config(mode)
                                        : parse_config_file(config_path, mode);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.workers = workers;
    cfg.seedless = seedless;
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

    const RunOutcome outcome = run(cfg);
    for (const auto& f : outcome.files) std::cout << f.string() << "\n";
    if (!outcome.summary.empty()) std::cout << outcome.summary << "\n";
    return static_cast<int>(ExitCode::ok);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(ExitCode::config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(exit_code_for(e));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(zenolz::kToolName) + " " + zenolz::kVersion +
               " - dissipatively stabilized Landau-Zener sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 1;
  bool seedless = false;
  app.add_option("--config", config_path, "INI-style config file (section per mode)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides the config's `out`)");
  app.add_option("--workers", workers, "worker threads for independent grid points")
      ->check(CLI::PositiveNumber);
  app.add_flag("--seedless", seedless,
               "assert the no-randomness contract: identical configs give byte-identical CSVs");

  const struct {
    const char* name;
    const char* help;
    zenolz::RunMode mode;
  } kModes[] = {
      {"discrete", "projective-measurement survival vs measurement count", zenolz::RunMode::discrete},
      {"meanfield", "mean-field trajectories over an (N, gamma_x, gamma_z) grid", zenolz::RunMode::meanfield},
      {"exact", "exact Dicke-basis Lindblad trajectories (N <= 64)", zenolz::RunMode::exact},
      {"readout", "majority-vote readout: required p over an N grid", zenolz::RunMode::readout},
      {"tmin", "minimum sweep time reaching the readout target, with log-log fit", zenolz::RunMode::tmin},
      {"sweep", "composite run: sigma_x grid, sigma_z grid, and the tmin curve", zenolz::RunMode::sweep},
  };
  for (const auto& m : kModes) app.add_subcommand(m.name, m.help);

  CLI11_PARSE(app, argc, argv);

  for (const auto& m : kModes)
    if (app.got_subcommand(m.name))
      return run_mode(m.mode, config_path, out_dir, workers, seedless);
  std::cerr << "error: no subcommand\n";
  return static_cast<int>(zenolz::ExitCode::failure);
}
