#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "regsel/error.hpp"
#include "regsel/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Best-subset regression with statistical validity constraints"};
  app.option_defaults()->always_capture_default();

  // Flags are collected as raw strings and layered over the config file.
  std::map<std::string, std::string> flags;
  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file; flags override it");

  const std::pair<const char*, const char*> options[] = {
      {"input", "Delimited data file with a header row"},
      {"response", "Response column name"},
      {"delimiter", "Field delimiter (default ',')"},
      {"method", "lazy, base, fs, iter, penalty, or a comma list (default lazy)"},
      {"k", "Subset size, or a range a:b"},
      {"alpha-e", "Confidence level of the coefficient t-tests (0.95)"},
      {"alpha-l", "Confidence level of the linearity test (0.99)"},
      {"alpha-h", "Confidence level of the heteroscedasticity tests (0.99)"},
      {"residual-tests", "Enforce the residual tests (true)"},
      {"lambda-mse", "Penalty weight of the MSE (4)"},
      {"lambda-pi", "Penalty weight per insignificant coefficient (0.5)"},
      {"lambda-e", "Penalty weight of E (6)"},
      {"lambda-l", "Penalty weight of the linearity p-value (0.5)"},
      {"lambda-h", "Penalty weight of the heteroscedasticity p-value (0.5)"},
      {"tau", "Tolerance on E when comparing alternatives (0.1)"},
      {"bigm-samples", "Sampled subsets for the big-M estimate (50)"},
      {"bigm-safety", "Safety factor on the big-M estimate (2)"},
      {"seed", "Sampling seed (0)"},
      {"time-limit", "Seconds per solve (600)"},
      {"threads", "Worker threads per solve (1)"},
      {"out", "Output directory (.)"},
      {"dataset-id", "Name used in output files (input file stem)"},
  };
  for (const auto& [name, help] : options) {
    app.add_option_function<std::string>(
        std::string("--") + name, [&flags, key = std::string(name)](const std::string& v) { flags[key] = v; },
        help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : regsel::kExitError;
  }

  regsel::RunConfig config;
  try {
    std::map<std::string, std::string> settings;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw regsel::ConfigError("cannot read config file '" + config_path + "'");
      settings = regsel::read_config_file(in);
    }
    for (const auto& [key, value] : flags) settings[key] = value;
    for (const auto& [key, value] : settings) regsel::apply_setting(config, key, value);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return regsel::kExitError;
  }
  return regsel::run(config, std::cout, std::cerr);
}
