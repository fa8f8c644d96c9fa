#pragma once

namespace regsel {

/// P(|T_dof| >= |t|). Throws std::invalid_argument for dof < 1 or NaN t.
[[nodiscard]] double student_t_two_sided_pvalue(double t, int dof);

/// Upper-tail probability P(X >= x) of a chi-square with `dof` degrees of
/// freedom. Throws std::invalid_argument for x < 0 or dof < 1.
[[nodiscard]] double chi_square_sf(double x, int dof);

/// Two-sided critical value t_{1 - (1-confidence)/2, dof}: |t| at or above
/// it gives a p-value of at most 1 - confidence.
[[nodiscard]] double student_t_critical(double confidence, int dof);

}  // namespace regsel
