#include "regsel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "regsel/distributions.hpp"
#include "regsel/error.hpp"

namespace regsel {

void SignificanceConfig::validate() const {
  auto in_unit = [](double a) { return a > 0.0 && a < 1.0; };
  if (!in_unit(alpha_e) || !in_unit(alpha_l) || !in_unit(alpha_h)) {
    throw ConfigError("significance levels must lie strictly between 0 and 1");
  }
}

bool coefficient_violates(double p_value, const SignificanceConfig& cfg) noexcept {
  return p_value > 1.0 - cfg.alpha_e;
}

bool linearity_violates(double p_value, const SignificanceConfig& cfg) noexcept {
  return p_value < 1.0 - cfg.alpha_l;
}

bool hetero_violates(double p_value, const SignificanceConfig& cfg) noexcept {
  return p_value < 1.0 - cfg.alpha_h;
}

CoefficientTests coef_t_tests(const FitResult& fit, const SignificanceConfig& cfg) {
  if (!fit.full_rank) {
    throw DiagnosticsError("coefficient t-tests need a full-rank fit (subset " +
                           fit.subset.to_string() + ")");
  }
  CoefficientTests out;
  out.p_values.reserve(static_cast<std::size_t>(fit.k()));
  double violating_sum = 0.0;
  for (int j = 0; j < fit.k(); ++j) {
    const double coef = fit.coefficients(j);
    const double se = fit.std_errors(j);
    double p = 1.0;
    if (se > 0.0) {
      p = student_t_two_sided_pvalue(coef / se, fit.dof);
    } else if (coef != 0.0) {
      p = 0.0;  // exact fit: nonzero coefficient with no sampling error
    }
    out.p_values.push_back(p);
    if (coefficient_violates(p, cfg)) {
      ++out.pi;
      violating_sum += p;
    }
  }
  out.e = out.pi > 0 ? violating_sum / out.pi : 0.0;
  return out;
}

SlopeTest slope_t_test(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  SlopeTest out;
  const auto n = x.size();
  const double xbar = x.mean();
  const double ybar = y.mean();
  const Eigen::ArrayXd dx = x.array() - xbar;
  const Eigen::ArrayXd dy = y.array() - ybar;
  const double sxx = dx.square().sum();
  if (n < 3 || !(sxx > 1e-300)) {
    out.skipped = true;
    return out;
  }
  out.slope = (dx * dy).sum() / sxx;
  const double intercept = ybar - out.slope * xbar;
  const double sse = (y.array() - intercept - out.slope * x.array()).square().sum();
  const double syy = dy.square().sum();
  const auto dof = static_cast<int>(n - 2);
  // Treat a slope whose explained sum of squares is at round-off level of
  // the total as exactly zero.
  const double ssr = out.slope * out.slope * sxx;
  if (!(syy > 0.0) || ssr <= 1e-24 * syy) {
    out.p_value = 1.0;
    return out;
  }
  const double se = std::sqrt(std::max(sse, 0.0) / dof / sxx);
  if (!(se > 0.0)) {
    out.p_value = 0.0;
    return out;
  }
  out.p_value = student_t_two_sided_pvalue(out.slope / se, dof);
  return out;
}

SlopeTest linearity_test(const FitResult& fit) { return slope_t_test(fit.fitted, fit.residuals); }

SlopeTest abs_residual_test(const FitResult& fit) {
  return slope_t_test(fit.fitted, fit.residuals.cwiseAbs());
}

BreuschPagan breusch_pagan_test(const Dataset& dataset, const FitResult& fit) {
  if (!fit.full_rank) {
    throw DiagnosticsError("Breusch-Pagan test needs a full-rank fit (subset " +
                           fit.subset.to_string() + ")");
  }
  const int n = fit.n();
  const int k = fit.k();
  Eigen::MatrixXd aux(n, k + 1);
  aux.col(0).setOnes();
  aux.rightCols(k) = select_columns(dataset, fit.subset.indices());
  const Eigen::VectorXd e2 = fit.residuals.array().square().matrix();

  BreuschPagan out;
  out.dof = k;
  const double sst = (e2.array() - e2.mean()).square().sum();
  if (!(sst > 1e-28 * std::max(1.0, e2.squaredNorm()))) {
    out.lm = 0.0;
    out.p_value = 1.0;
    return out;
  }
  const auto sol = least_squares(aux, e2);
  if (sol.rank < k + 1) throw DiagnosticsError("Breusch-Pagan auxiliary design is rank deficient");
  const double r2 = std::clamp(1.0 - sol.sse / sst, 0.0, 1.0);
  out.lm = n * r2;
  out.p_value = chi_square_sf(out.lm, k);
  return out;
}

void apply_verdicts(DiagnosticsReport& report, const SignificanceConfig& cfg) {
  report.r_h = std::max(report.p_abs_residual, report.p_breusch_pagan);
  report.passes_ttests = report.usable && report.pi == 0;
  report.passes_linearity = report.usable && !linearity_violates(report.r_l, cfg);
  report.passes_hetero = report.usable && !(hetero_violates(report.p_abs_residual, cfg) &&
                                            hetero_violates(report.p_breusch_pagan, cfg));
  report.feasible = report.passes_ttests;
  if (cfg.residual_tests) report.feasible = report.feasible && report.passes_linearity && report.passes_hetero;
}

DiagnosticsReport run_diagnostics(const Dataset& dataset, const FitResult& fit, const SignificanceConfig& cfg) {
  DiagnosticsReport report;
  try {
    const auto coefs = coef_t_tests(fit, cfg);
    report.coef_pvalues = coefs.p_values;
    report.pi = coefs.pi;
    report.e = coefs.e;
    const auto lin = linearity_test(fit);
    report.r_l = lin.p_value;
    report.linearity_slope = lin.slope;
    report.p_abs_residual = abs_residual_test(fit).p_value;
    report.p_breusch_pagan = breusch_pagan_test(dataset, fit).p_value;
  } catch (const DiagnosticsError&) {
    // Worst case on every measure so the candidate can never look good.
    report.usable = false;
    report.coef_pvalues.assign(static_cast<std::size_t>(fit.k()), 1.0);
    report.pi = fit.k();
    report.e = 1.0;
    report.r_l = 0.0;
    report.linearity_slope = 0.0;
    report.p_abs_residual = 0.0;
    report.p_breusch_pagan = 0.0;
  }
  apply_verdicts(report, cfg);
  return report;
}

}  // namespace regsel
