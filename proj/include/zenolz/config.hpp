// config.hpp — flat INI-style run configuration.
//
// One section per mode ([discrete], [meanfield], [exact], [readout], [tmin],
// [sweep]); each section is flat key = value. Grids are comma lists
// ("1,10,100") or log-spaced ranges ("log:1e-3,1e2,6" = six points). A file
// may carry several sections; parsing validates all of them and applies the
// one matching the requested mode on top of that mode's defaults. Validation
// reports every violation, not just the first, each with key path and line.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zenolz {

enum class RunMode { discrete, meanfield, exact, readout, tmin, sweep };

const char* to_string(RunMode mode);

struct RunConfig {
  RunMode mode = RunMode::meanfield;

  // schedule
  double delta = 1.0;
  double epsilon0 = 10.0;
  double T = 20.0;

  // relaxation grids (single-valued where the mode needs a scalar)
  std::vector<double> gamma_x{0.1};
  std::vector<double> gamma_z{0.0};

  std::vector<std::int64_t> N{1, 10, 100};
  std::vector<std::int64_t> n{1000, 10000, 100000, 1000000};  // discrete mode
  std::vector<std::int64_t> tmin_N{10, 100, 1000, 10000};     // sweep mode

  double target_pe = 1e-12;
  int samples = 2000;
  double rtol = 1e-8;
  double atol = 1e-10;

  // tmin search
  double t_lo = 0.05;
  double t_hi = 4000.0;
  double t_precision = 1e-3;

  std::string out_dir = "out";

  // CLI-only knobs
  int workers = 1;
  bool seedless = false;

  std::vector<std::string> warnings;

  // Canonical echo of the effective configuration and its FNV-1a hash;
  // both land in every CSV metadata header.
  std::string canonical;
  std::uint64_t config_hash = 0;
};

struct ConfigViolation {
  std::string key;   // section-qualified, e.g. "meanfield.delta"
  int line;          // 1-based; 0 when not tied to a file line
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigViolation> violations);
  const std::vector<ConfigViolation>& violations() const { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

RunConfig default_config(RunMode mode);

// Parses and validates; throws ConfigError listing all violations.
RunConfig parse_config(std::string_view text, RunMode mode);
RunConfig parse_config_file(const std::filesystem::path& path, RunMode mode);

// Recomputes `canonical` and `config_hash` from the effective values.
void finalize_config(RunConfig& cfg);

}  // namespace zenolz
