#pragma once

#include <vector>

#include <Eigen/Dense>

#include "regsel/data.hpp"
#include "regsel/linalg.hpp"

namespace regsel {

/// Confidence levels of the three test families. A p-value violates
///   - a coefficient t-test when p > 1 - alpha_e,
///   - the linearity test when p < 1 - alpha_l,
///   - a heteroscedasticity test when p < 1 - alpha_h.
struct SignificanceConfig {
  double alpha_e = 0.95;
  double alpha_l = 0.99;
  double alpha_h = 0.99;
  /// When false, feasibility depends on the t-tests only; residual tests
  /// are still computed and reported.
  bool residual_tests = true;

  void validate() const;
};

[[nodiscard]] bool coefficient_violates(double p_value, const SignificanceConfig& cfg) noexcept;
[[nodiscard]] bool linearity_violates(double p_value, const SignificanceConfig& cfg) noexcept;
[[nodiscard]] bool hetero_violates(double p_value, const SignificanceConfig& cfg) noexcept;

struct CoefficientTests {
  std::vector<double> p_values;  // aligned with the fit's subset order
  int pi = 0;                    // number of insignificant coefficients
  double e = 0.0;                // mean p-value of the insignificant ones
};

/// Slope t-test of an auxiliary simple regression y = c0 + c1 x.
struct SlopeTest {
  double slope = 0.0;
  double p_value = 1.0;
  bool skipped = false;  // regressor had zero variance
};

struct BreuschPagan {
  double lm = 0.0;  // n * R^2 of the auxiliary regression
  double p_value = 1.0;
  int dof = 0;
};

struct DiagnosticsReport {
  std::vector<double> coef_pvalues;
  int pi = 0;
  double e = 0.0;
  double r_l = 1.0;
  double linearity_slope = 0.0;
  double p_abs_residual = 1.0;
  double p_breusch_pagan = 1.0;
  double r_h = 1.0;  // max(p_abs_residual, p_breusch_pagan)
  bool passes_ttests = true;
  bool passes_linearity = true;
  bool passes_hetero = true;
  bool feasible = true;
  /// False when a test could not be evaluated (rank-deficient fit); the
  /// report then carries worst-case values and feasible is false.
  bool usable = true;
};

/// Throws DiagnosticsError on a rank-deficient fit.
[[nodiscard]] CoefficientTests coef_t_tests(const FitResult& fit, const SignificanceConfig& cfg);

/// Regresses y on x with an intercept and tests the slope.
[[nodiscard]] SlopeTest slope_t_test(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Residuals regressed on fitted values.
[[nodiscard]] SlopeTest linearity_test(const FitResult& fit);

/// |residuals| regressed on fitted values.
[[nodiscard]] SlopeTest abs_residual_test(const FitResult& fit);

/// Squared residuals regressed on the k selected columns plus an
/// intercept; LM = n R^2 ~ chi^2_k. Throws DiagnosticsError when the
/// selected columns are rank deficient.
[[nodiscard]] BreuschPagan breusch_pagan_test(const Dataset& dataset, const FitResult& fit);

/// Runs every test. Never throws for rank deficiency: the report is
/// flagged unusable and infeasible instead.
[[nodiscard]] DiagnosticsReport run_diagnostics(const Dataset& dataset, const FitResult& fit,
                                                const SignificanceConfig& cfg);

/// Recomputes the verdict fields of a report from its p-values.
void apply_verdicts(DiagnosticsReport& report, const SignificanceConfig& cfg);

}  // namespace regsel
