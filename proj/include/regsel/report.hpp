#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "regsel/baselines.hpp"
#include "regsel/data.hpp"
#include "regsel/solver.hpp"

namespace regsel {

inline constexpr const char* kReportSchema = "regsel-report/1";

enum class Method { kLazy, kBase, kForward, kIterative, kPenalty };

[[nodiscard]] std::string_view to_string(Method method) noexcept;
/// Accepts lazy, base, fs, iter, penalty. Throws ConfigError otherwise.
[[nodiscard]] Method parse_method(std::string_view name);

struct ReportContext {
  std::string dataset_id;
  std::string input;
  Method method = Method::kLazy;
  int k = 0;
  const SolverConfig* config = nullptr;
  std::optional<double> rep;
  const IterTrace* iterations = nullptr;
  const ForwardSelection* forward = nullptr;
};

[[nodiscard]] nlohmann::json fit_to_json(const Dataset& dataset, const FitResult& fit,
                                         const DiagnosticsReport& report);

/// Full outcome report. Every field except "wall_time" is a deterministic
/// function of the inputs and configuration.
[[nodiscard]] nlohmann::json outcome_to_json(const Dataset& dataset, const SolveOutcome& outcome,
                                             const ReportContext& context);

}  // namespace regsel
