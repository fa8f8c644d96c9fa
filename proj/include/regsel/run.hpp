#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "regsel/report.hpp"
#include "regsel/solver.hpp"

namespace regsel {

struct KRange {
  int first = 1;
  int last = 1;
};

/// "5" or "3:10".
[[nodiscard]] KRange parse_k_range(std::string_view text);

struct RunConfig {
  std::filesystem::path input;
  std::string response;
  char delimiter = ',';
  std::vector<Method> methods{Method::kLazy};
  KRange k;
  SolverConfig solver;
  std::filesystem::path out = ".";
  /// Used in file names and rows; defaults to the input file stem.
  std::string dataset_id;

  void validate() const;
};

/// Parses "key = value" lines; '#' starts a comment. Keys match the long
/// CLI flag names without the dashes.
[[nodiscard]] std::map<std::string, std::string> read_config_file(std::istream& in);

/// Applies one key/value setting to `config`. Throws ConfigError on an
/// unknown key or a malformed value.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitInfeasible = 2 };

/// Loads the input, then for each k and method solves and writes
/// <id>_k<k>_<method>.json, <id>_k<k>_<method>_residuals.csv and a row of
/// comparison.csv into config.out. Errors are reported on `err`.
[[nodiscard]] int run(const RunConfig& config, std::ostream& log, std::ostream& err);

}  // namespace regsel
