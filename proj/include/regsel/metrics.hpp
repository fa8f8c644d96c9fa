#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "regsel/linalg.hpp"
#include "regsel/solver.hpp"

namespace regsel {

inline constexpr const char* kRowSchema = "regsel-rows/1";

struct ComparisonRow {
  std::string dataset;
  int k = 0;
  std::string method;
  SolveStatus status = SolveStatus::kOptimal;
  double adjusted_r2 = 0.0;
  std::optional<double> rep;
  int pi = 0;
  double e = 0.0;
  double r_l = 1.0;
  double r_h = 1.0;
  bool passes_ttests = false;
  bool passes_residual_tests = false;
  double wall_time = 0.0;
};

/// Adjusted R^2 of the subset an outcome reports (incumbent or alternative).
[[nodiscard]] std::optional<double> outcome_adjusted_r2(const SolveOutcome& outcome, int n);

/// adjusted_r2(method) / adjusted_r2(base); absent when the base value is
/// not positive or either outcome has no subset.
[[nodiscard]] std::optional<double> rep(const SolveOutcome& method, const SolveOutcome& base, int n);
[[nodiscard]] std::optional<double> rep(double method_adjusted_r2, double base_adjusted_r2);

[[nodiscard]] ComparisonRow make_row(std::string dataset, int k, std::string method, const SolveOutcome& outcome,
                                     int n, const SolveOutcome* base);

/// Mean REP over rows that have one. With feasible_only, rows whose status
/// is not optimal / best_feasible are skipped.
[[nodiscard]] std::optional<double> mean_rep(const std::vector<ComparisonRow>& rows, bool feasible_only);

struct SummaryRow {
  std::string key;  // dataset id or k, depending on the grouping
  std::string method;
  int cases = 0;
  std::optional<double> rep;
  std::optional<double> rep_feas;
  int ttest_and_residual = 0;
  int ttest_only = 0;
  int residual_only = 0;
  double mean_wall_time = 0.0;
};

enum class GroupBy { kDataset, kK };

/// Aggregates rows per (group key, method), keys in first-seen order.
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<ComparisonRow>& rows, GroupBy group);

struct ResidualPoint {
  double fitted = 0.0;
  double residual = 0.0;
  double abs_residual = 0.0;
};

[[nodiscard]] std::vector<ResidualPoint> residual_plot_data(const FitResult& fit);

/// Header "fitted,residual,abs_residual", one row per observation.
void write_residual_csv(std::ostream& out, const std::vector<ResidualPoint>& points);

[[nodiscard]] std::string comparison_csv_header();
[[nodiscard]] std::string to_csv(const ComparisonRow& row);

}  // namespace regsel
