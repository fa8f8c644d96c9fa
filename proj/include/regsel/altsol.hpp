#pragma once

#include <optional>

#include "regsel/diagnostics.hpp"
#include "regsel/linalg.hpp"
#include "regsel/subset.hpp"

namespace regsel {

/// Weights of the penalty function q and the tolerance of the
/// decision-with-tolerance rule.
struct PenaltyParams {
  double lambda_mse = 4.0;
  double lambda_pi = 0.5;
  double lambda_e = 6.0;
  double lambda_l = 0.5;
  double lambda_h = 0.5;
  double tau = 0.1;

  void validate() const;
};

/// Near-feasible candidate as seen by the comparison rules.
struct AltCandidate {
  CandidateSubset subset;
  double mse = 0.0;
  int pi = 0;
  double e = 0.0;
  double r_l = 1.0;
  double r_h = 1.0;

  [[nodiscard]] static AltCandidate from(const FitResult& fit, const DiagnosticsReport& report);
};

/// max(p - (1 - alpha), 0) / alpha
[[nodiscard]] double w1(double p, double alpha);
/// max((1 - alpha) - p, 0) / (1 - alpha)
[[nodiscard]] double w2(double p, double alpha);

/// lambda*MSE + lambda_pi*pi + lambda_E*w1(E) + lambda_l*w2(r_l) + lambda_h*w2(r_h).
/// Lower is better.
[[nodiscard]] double penalty_q(const AltCandidate& c, const PenaltyParams& params, const SignificanceConfig& cfg);

enum class Pick { kFirst, kSecond };

/// Decision by quality: the candidate with lower q; ties keep `first`.
[[nodiscard]] Pick decide_quality(const AltCandidate& first, const AltCandidate& second,
                                  const PenaltyParams& params, const SignificanceConfig& cfg);

/// Decision with tolerance for two candidates that both have insignificant
/// coefficients. kFirst means s_best is kept.
[[nodiscard]] Pick decide_tolerance(const AltCandidate& s_best, const AltCandidate& s_new,
                                    const PenaltyParams& params, const SignificanceConfig& cfg);

/// Full alternative-solution rule: significance counts first, then the
/// tolerance rule or q.
[[nodiscard]] Pick decide_procedure(const AltCandidate& s_best, const AltCandidate& s_new,
                                    const PenaltyParams& params, const SignificanceConfig& cfg);

enum class AltComparator {
  kProcedure,  // significance-first rules, falling back to q
  kQuality,    // q alone
};

/// Single-slot holder of the best near-feasible candidate.
class AltState {
 public:
  AltState() = default;
  AltState(AltComparator comparator, PenaltyParams params, SignificanceConfig cfg)
      : comparator_(comparator), params_(params), cfg_(cfg) {}

  /// Offers a new candidate; returns true when it replaced the stored one.
  bool offer(const AltCandidate& candidate);

  [[nodiscard]] const std::optional<AltCandidate>& best() const noexcept { return best_; }

 private:
  AltComparator comparator_ = AltComparator::kProcedure;
  PenaltyParams params_;
  SignificanceConfig cfg_;
  std::optional<AltCandidate> best_;
};

/// One step of the alternative-solution update; returns the state after
/// considering `s_new`.
[[nodiscard]] std::optional<AltCandidate> asp_update(const std::optional<AltCandidate>& state,
                                                     const AltCandidate& s_new, const PenaltyParams& params,
                                                     const SignificanceConfig& cfg);

}  // namespace regsel
