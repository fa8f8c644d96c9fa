#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "regsel/data.hpp"
#include "regsel/diagnostics.hpp"
#include "regsel/linalg.hpp"

namespace regsel {

struct BigMOptions {
  int num_samples = 50;
  double safety_factor = 2.0;
  std::uint64_t seed = 0;
};

/// safety_factor * max |coefficient| over `num_samples` uniformly drawn
/// pair-legal k-subsets. The sample sequence is fixed by the seed before
/// any fit runs, so the result does not depend on `threads`.
[[nodiscard]] double estimate_big_m(const Dataset& dataset, int k, const BigMOptions& options, int threads = 1);

struct RelaxationOptions {
  int max_iterations = 10000;
  /// Stop once (objective - certified lower bound) <= rel_gap * objective.
  double rel_gap = 1e-9;
};

struct MseLowerBound {
  double mse_lb = 0.0;  // sse_lb / (n - k - 1)
  double sse_lb = 0.0;  // certified lower bound on the relaxation optimum
  double relaxed_sse = 0.0;  // objective at the final feasible iterate
  int iterations = 0;
  /// False when the certified gap did not close to 1e-6 relative within the
  /// iteration cap; sse_lb is still a valid lower bound.
  bool converged = true;
};

/// Continuous relaxation of the cardinality-constrained problem:
///   min ||A x - b||^2  s.t.  sum_j |x_j| <= k M,  |x_j| + |x_pair(j)| <= M.
/// Solved by accelerated projected gradient with an exact projection; the
/// returned bound is max(Frank-Wolfe dual bound, unconstrained full SSE).
[[nodiscard]] MseLowerBound mse_lower_bound(const Dataset& dataset, int k, double big_m,
                                            const RelaxationOptions& options = {});

/// Euclidean projection onto the relaxation's feasible set. `v` has 2m
/// entries laid out like the design columns.
[[nodiscard]] Eigen::VectorXd project_relaxation_set(const Eigen::VectorXd& v, int k, double big_m);

/// Constants shared by every candidate check of one solve.
struct BoundContext {
  int k = 0;
  double big_m = 0.0;
  double mse_lb = 0.0;
  /// Lower bound on diag((A_S'A_S)^-1) over all subsets: VIF >= 1 divided
  /// by the squared column norm n - 1.
  double inverse_gram_lb = 0.0;
  double s_lb = 0.0;  // sqrt(mse_lb * inverse_gram_lb)
  double t_crit = 0.0;
  bool relaxation_converged = true;
};

[[nodiscard]] BoundContext make_bound_context(const Dataset& dataset, int k, double big_m, double mse_lb,
                                              const SignificanceConfig& cfg);

/// Samples big-M, solves the relaxation, and packs the context.
[[nodiscard]] BoundContext compute_bound_context(const Dataset& dataset, int k, const BigMOptions& big_m,
                                                 const SignificanceConfig& cfg, int threads = 1);

/// True iff |x_j| >= t_crit * s_lb for every selected coefficient. False
/// proves some coefficient fails its exact t-test. Fits whose coefficients
/// exceed big_m lie outside the relaxation, so the bound does not apply and
/// the filter passes them.
[[nodiscard]] bool relaxed_ttest_filter(const FitResult& fit, const BoundContext& ctx);

}  // namespace regsel
