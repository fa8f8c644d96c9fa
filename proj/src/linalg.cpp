#include "regsel/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "regsel/error.hpp"

namespace regsel {

LeastSquaresSolution least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  LeastSquaresSolution out;
  if (x.cols() == 0) {
    out.coefficients.resize(0);
    out.sse = y.squaredNorm();
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(kRankTolerance);
  cod.compute(x);
  out.coefficients = cod.solve(y);
  out.rank = static_cast<int>(cod.rank());
  out.sse = (x * out.coefficients - y).squaredNorm();
  return out;
}

Eigen::MatrixXd select_columns(const Dataset& dataset, std::span<const int> columns) {
  Eigen::MatrixXd x(dataset.n(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    x.col(static_cast<Eigen::Index>(c)) = dataset.design().col(columns[c]);
  }
  return x;
}

LeastSquaresSolution fit_columns(const Dataset& dataset, std::span<const int> columns) {
  return least_squares(select_columns(dataset, columns), dataset.response());
}

FitResult ols_fit(const Dataset& dataset, const CandidateSubset& subset) {
  if (subset.empty()) throw std::invalid_argument("ols_fit: empty subset");
  if (!subset.pair_legal(dataset.m())) {
    throw std::invalid_argument("ols_fit: subset " + subset.to_string() + " violates pair exclusion");
  }
  const int n = dataset.n();
  const int k = static_cast<int>(subset.size());
  if (n - k - 1 < 1) {
    throw DegreesOfFreedomError("n - k - 1 = " + std::to_string(n - k - 1) + " < 1 (n = " +
                                std::to_string(n) + ", k = " + std::to_string(k) + ")");
  }

  const Eigen::MatrixXd a = select_columns(dataset, subset.indices());
  const Eigen::VectorXd& b = dataset.response();

  FitResult fit;
  fit.subset = subset;
  fit.dof = n - k - 1;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(kRankTolerance);
  qr.compute(a);
  fit.rank = static_cast<int>(qr.rank());
  fit.full_rank = fit.rank == k;

  if (fit.full_rank) {
    fit.coefficients = qr.solve(b);
  } else {
    fit.coefficients = least_squares(a, b).coefficients;
  }
  fit.fitted = a * fit.coefficients;
  fit.residuals = fit.fitted - b;
  fit.sse = fit.residuals.squaredNorm();
  fit.mse = fit.sse / fit.dof;

  fit.std_errors = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
  if (fit.full_rank) {
    // (AP)'(AP) = R'R  =>  diag((A'A)^-1)[perm(i)] = ||row i of R^-1||^2
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const auto& perm = qr.colsPermutation().indices();
    for (int i = 0; i < k; ++i) {
      fit.std_errors(perm(i)) = std::sqrt(fit.mse * r_inv.row(i).squaredNorm());
    }
  }
  return fit;
}

double vif(const Dataset& dataset, const CandidateSubset& subset, int column) {
  if (!subset.contains(column)) {
    throw std::invalid_argument("vif: column " + std::to_string(column) + " not in subset");
  }
  if (subset.size() < 2) throw std::invalid_argument("vif: subset needs at least two columns");
  std::vector<int> others;
  for (int j : subset) {
    if (j != column) others.push_back(j);
  }
  const Eigen::VectorXd target = dataset.design().col(column);
  const auto sol = least_squares(select_columns(dataset, others), target);
  const double sst = (target.array() - target.mean()).square().sum();
  const double r2 = 1.0 - sol.sse / sst;
  if (1.0 - r2 <= 1e-12) return std::numeric_limits<double>::infinity();
  return std::max(1.0, 1.0 / (1.0 - r2));
}

double adjusted_r2(double sse, int n, int k) {
  if (n - k - 1 < 1) throw DegreesOfFreedomError("adjusted_r2: n - k - 1 < 1");
  const double sst = static_cast<double>(n - 1);
  return 1.0 - (sse / (n - k - 1)) / (sst / (n - 1));
}

double adjusted_r2(const FitResult& fit, int n, int k) { return adjusted_r2(fit.sse, n, k); }

}  // namespace regsel
