#include "regsel/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "regsel/distributions.hpp"
#include "regsel/error.hpp"

namespace regsel {
namespace {

std::vector<CandidateSubset> draw_subsets(int m, int k, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CandidateSubset> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> pairs(static_cast<std::size_t>(m));
  for (int s = 0; s < count; ++s) {
    std::iota(pairs.begin(), pairs.end(), 0);
    std::vector<int> columns;
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(i, m - 1);
      std::swap(pairs[static_cast<std::size_t>(i)], pairs[static_cast<std::size_t>(pick(rng))]);
      const int p = pairs[static_cast<std::size_t>(i)];
      const bool use_log = std::bernoulli_distribution(0.5)(rng);
      columns.push_back(use_log ? p + m : p);
    }
    out.emplace_back(std::move(columns));
  }
  return out;
}

double max_abs_coefficient(const Dataset& dataset, const std::vector<CandidateSubset>& subsets,
                           std::size_t begin, std::size_t end) {
  double best = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const auto sol = fit_columns(dataset, subsets[i].indices());
    if (sol.coefficients.size() > 0) best = std::max(best, sol.coefficients.cwiseAbs().maxCoeff());
  }
  return best;
}

// Soft-threshold level that projects (a, b) onto the L1 ball of radius r.
double pair_threshold(double a, double b, double r) {
  double u1 = std::abs(a);
  double u2 = std::abs(b);
  if (u1 + u2 <= r) return 0.0;
  if (u1 < u2) std::swap(u1, u2);
  if (u1 - u2 >= r) return u1 - r;
  return 0.5 * (u1 + u2 - r);
}

double soft(double v, double t) { return std::copysign(std::max(std::abs(v) - t, 0.0), v); }

}  // namespace

double estimate_big_m(const Dataset& dataset, int k, const BigMOptions& options, int threads) {
  if (options.num_samples < 1) throw ConfigError("big-M sampling needs at least one sample");
  if (k < 1 || k > dataset.m()) throw ConfigError("big-M sampling: k must lie in [1, m]");
  if (!(options.safety_factor > 0.0)) throw ConfigError("big-M safety factor must be positive");

  const auto subsets = draw_subsets(dataset.m(), k, options.num_samples, options.seed);
  const std::size_t total = subsets.size();
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, total);
  double max_coef = 0.0;
  if (workers == 1) {
    max_coef = max_abs_coefficient(dataset, subsets, 0, total);
  } else {
    std::vector<std::future<double>> parts;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t begin = 0; begin < total; begin += chunk) {
      const std::size_t end = std::min(total, begin + chunk);
      parts.push_back(std::async(std::launch::async, max_abs_coefficient, std::cref(dataset), std::cref(subsets),
                                 begin, end));
    }
    for (auto& f : parts) max_coef = std::max(max_coef, f.get());
  }
  return options.safety_factor * max_coef;
}

Eigen::VectorXd project_relaxation_set(const Eigen::VectorXd& v, int k, double big_m) {
  const auto p = v.size();
  const auto m = p / 2;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p);
  if (!(big_m > 0.0)) return out;

  std::vector<double> mu(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) mu[static_cast<std::size_t>(j)] = pair_threshold(v(j), v(j + m), big_m);

  // Pair-wise result for a global L1 multiplier theta: soft-threshold each
  // pair at max(theta, mu_pair).
  auto l1_at = [&](double theta) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double t = std::max(theta, mu[static_cast<std::size_t>(j)]);
      total += std::max(std::abs(v(j)) - t, 0.0) + std::max(std::abs(v(j + m)) - t, 0.0);
    }
    return total;
  };

  const double budget = static_cast<double>(k) * big_m;
  double theta = 0.0;
  if (l1_at(0.0) > budget) {
    double lo = 0.0;
    double hi = v.cwiseAbs().maxCoeff();
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (l1_at(mid) > budget ? lo : hi) = mid;
    }
    theta = hi;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    const double t = std::max(theta, mu[static_cast<std::size_t>(j)]);
    out(j) = soft(v(j), t);
    out(j + m) = soft(v(j + m), t);
  }
  return out;
}

MseLowerBound mse_lower_bound(const Dataset& dataset, int k, double big_m, const RelaxationOptions& options) {
  if (k < 1 || k > dataset.m()) throw ConfigError("mse_lower_bound: k must lie in [1, m]");
  if (big_m < 0.0) throw ConfigError("mse_lower_bound: big-M must be non-negative");
  const int n = dataset.n();
  if (n - k - 1 < 1) throw DegreesOfFreedomError("mse_lower_bound: n - k - 1 < 1");

  const Eigen::MatrixXd& a = dataset.design();
  const Eigen::VectorXd& b = dataset.response();
  const int m = dataset.m();
  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::VectorXd atb = a.transpose() * b;
  const double btb = b.squaredNorm();

  auto objective = [&](const Eigen::VectorXd& x) {
    return std::max(x.dot(gram * x) - 2.0 * atb.dot(x) + btb, 0.0);
  };
  // min over the feasible set of g's: the k pairs with the largest
  // max(|g_j|, |g_pair|) each take the full budget M.
  std::vector<double> pair_grad(static_cast<std::size_t>(m));
  auto linear_min = [&](const Eigen::VectorXd& g) {
    for (int j = 0; j < m; ++j) {
      pair_grad[static_cast<std::size_t>(j)] = std::max(std::abs(g(j)), std::abs(g(j + m)));
    }
    std::nth_element(pair_grad.begin(), pair_grad.begin() + (k - 1), pair_grad.end(), std::greater<>());
    double top = 0.0;
    for (int i = 0; i < k; ++i) top += pair_grad[static_cast<std::size_t>(i)];
    return -big_m * top;
  };

  const double unconstrained = least_squares(a, b).sse;

  MseLowerBound out;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * m);
  double fx = btb;
  Eigen::VectorXd g = 2.0 * (gram * x - atb);
  double best_lb = std::max(unconstrained, fx - g.dot(x) + linear_min(g));
  if (big_m > 0.0) {
    const double lipschitz = 2.0 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly)
                                       .eigenvalues()
                                       .maxCoeff();
    const double step = 1.0 / lipschitz;
    Eigen::VectorXd y = x;
    double t = 1.0;
    int it = 0;
    while (it < options.max_iterations && fx - best_lb > options.rel_gap * fx) {
      ++it;
      const Eigen::VectorXd gy = 2.0 * (gram * y - atb);
      Eigen::VectorXd x_next = project_relaxation_set(y - step * gy, k, big_m);
      const double f_next = objective(x_next);
      if (f_next > fx) {
        // Function-value restart of the momentum.
        y = x;
        t = 1.0;
        continue;
      }
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = x_next + ((t - 1.0) / t_next) * (x_next - x);
      x = std::move(x_next);
      fx = f_next;
      t = t_next;
      g = 2.0 * (gram * x - atb);
      best_lb = std::max(best_lb, fx - g.dot(x) + linear_min(g));
    }
    out.iterations = it;
  }
  out.relaxed_sse = fx;
  out.sse_lb = std::min(best_lb, fx);
  out.converged = fx - out.sse_lb <= 1e-6 * std::max(fx, std::numeric_limits<double>::min());
  out.mse_lb = out.sse_lb / (n - k - 1);
  return out;
}

BoundContext make_bound_context(const Dataset& dataset, int k, double big_m, double mse_lb,
                                const SignificanceConfig& cfg) {
  BoundContext ctx;
  ctx.k = k;
  ctx.big_m = big_m;
  ctx.mse_lb = mse_lb;
  const double max_norm2 = dataset.design().colwise().squaredNorm().maxCoeff();
  ctx.inverse_gram_lb = max_norm2 > 0.0 ? 1.0 / max_norm2 : 0.0;
  ctx.s_lb = std::sqrt(mse_lb * ctx.inverse_gram_lb);
  ctx.t_crit = student_t_critical(cfg.alpha_e, dataset.n() - k - 1);
  return ctx;
}

BoundContext compute_bound_context(const Dataset& dataset, int k, const BigMOptions& big_m,
                                   const SignificanceConfig& cfg, int threads) {
  const double m_value = estimate_big_m(dataset, k, big_m, threads);
  const auto lb = mse_lower_bound(dataset, k, m_value);
  auto ctx = make_bound_context(dataset, k, m_value, lb.mse_lb, cfg);
  ctx.relaxation_converged = lb.converged;
  return ctx;
}

bool relaxed_ttest_filter(const FitResult& fit, const BoundContext& ctx) {
  if (!(ctx.s_lb > 0.0)) return true;
  if (!fit.full_rank) return true;
  if (fit.coefficients.size() == 0) return true;
  if (fit.coefficients.cwiseAbs().maxCoeff() > ctx.big_m) return true;
  const double threshold = ctx.t_crit * ctx.s_lb;
  return (fit.coefficients.cwiseAbs().array() >= threshold).all();
}

}  // namespace regsel
