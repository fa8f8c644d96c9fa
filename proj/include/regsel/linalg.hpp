#pragma once

#include <span>

#include <Eigen/Dense>

#include "regsel/data.hpp"
#include "regsel/subset.hpp"

namespace regsel {

/// Pivot threshold for rank decisions, relative to the largest column norm.
inline constexpr double kRankTolerance = 1e-10;

/// Least-squares fit of the response on a column subset (no intercept; the
/// data are centered).
struct FitResult {
  CandidateSubset subset;
  Eigen::VectorXd coefficients;  // aligned with subset order
  Eigen::VectorXd residuals;     // fitted - b
  Eigen::VectorXd fitted;
  double sse = 0.0;
  double mse = 0.0;  // sse / (n - k - 1)
  /// sqrt(mse * [(A_S'A_S)^-1]_jj); NaN when the fit is rank deficient.
  Eigen::VectorXd std_errors;
  int dof = 0;  // n - k - 1
  int rank = 0;
  bool full_rank = true;

  [[nodiscard]] int k() const noexcept { return static_cast<int>(subset.size()); }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(residuals.size()); }
};

/// Solution of an arbitrary dense least-squares problem min ||X beta - y||.
struct LeastSquaresSolution {
  Eigen::VectorXd coefficients;  // minimum-norm when rank deficient
  double sse = 0.0;
  int rank = 0;
};

[[nodiscard]] LeastSquaresSolution least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// Gathers the listed design columns into a dense n x |columns| matrix.
[[nodiscard]] Eigen::MatrixXd select_columns(const Dataset& dataset, std::span<const int> columns);

/// SSE of the least-squares fit of b on an arbitrary column list (pair
/// exclusion not required).
[[nodiscard]] LeastSquaresSolution fit_columns(const Dataset& dataset, std::span<const int> columns);

/// Throws DegreesOfFreedomError when n - k - 1 < 1, std::invalid_argument
/// on an empty or pair-illegal subset.
[[nodiscard]] FitResult ols_fit(const Dataset& dataset, const CandidateSubset& subset);

/// 1 / (1 - R^2_j) of column j regressed on the other subset columns;
/// +infinity under exact collinearity.
[[nodiscard]] double vif(const Dataset& dataset, const CandidateSubset& subset, int column);

/// 1 - (sse / (n-k-1)) / (sst / (n-1)); sst = n - 1 for standardized b.
[[nodiscard]] double adjusted_r2(double sse, int n, int k);
[[nodiscard]] double adjusted_r2(const FitResult& fit, int n, int k);

}  // namespace regsel
