#include "regsel/altsol.hpp"

#include <algorithm>

#include "regsel/error.hpp"

namespace regsel {

void PenaltyParams::validate() const {
  if (lambda_mse < 0 || lambda_pi < 0 || lambda_e < 0 || lambda_l < 0 || lambda_h < 0) {
    throw ConfigError("penalty weights must be non-negative");
  }
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
}

AltCandidate AltCandidate::from(const FitResult& fit, const DiagnosticsReport& report) {
  return AltCandidate{fit.subset, fit.mse, report.pi, report.e, report.r_l, report.r_h};
}

double w1(double p, double alpha) { return std::max(p - (1.0 - alpha), 0.0) / alpha; }

double w2(double p, double alpha) { return std::max((1.0 - alpha) - p, 0.0) / (1.0 - alpha); }

double penalty_q(const AltCandidate& c, const PenaltyParams& params, const SignificanceConfig& cfg) {
  return params.lambda_mse * c.mse + params.lambda_pi * c.pi + params.lambda_e * w1(c.e, cfg.alpha_e) +
         params.lambda_l * w2(c.r_l, cfg.alpha_l) + params.lambda_h * w2(c.r_h, cfg.alpha_h);
}

Pick decide_quality(const AltCandidate& first, const AltCandidate& second, const PenaltyParams& params,
                    const SignificanceConfig& cfg) {
  return penalty_q(second, params, cfg) < penalty_q(first, params, cfg) ? Pick::kSecond : Pick::kFirst;
}

Pick decide_tolerance(const AltCandidate& s_best, const AltCandidate& s_new, const PenaltyParams& params,
                      const SignificanceConfig& cfg) {
  if (s_new.e - s_best.e > params.tau) return Pick::kFirst;
  if (s_best.e > s_new.e && s_best.pi > s_new.pi) return Pick::kSecond;
  if (s_best.e < s_new.e && s_best.pi < s_new.pi) return Pick::kFirst;
  return decide_quality(s_best, s_new, params, cfg);
}

Pick decide_procedure(const AltCandidate& s_best, const AltCandidate& s_new, const PenaltyParams& params,
                      const SignificanceConfig& cfg) {
  if (s_best.pi > 0 && s_new.pi == 0) return Pick::kSecond;
  if (s_best.pi == 0 && s_new.pi > 0) return Pick::kFirst;
  if (s_best.pi == 0 && s_new.pi == 0) return decide_quality(s_best, s_new, params, cfg);
  return decide_tolerance(s_best, s_new, params, cfg);
}

std::optional<AltCandidate> asp_update(const std::optional<AltCandidate>& state, const AltCandidate& s_new,
                                       const PenaltyParams& params, const SignificanceConfig& cfg) {
  if (!state) return s_new;
  return decide_procedure(*state, s_new, params, cfg) == Pick::kFirst ? state : std::optional<AltCandidate>(s_new);
}

bool AltState::offer(const AltCandidate& candidate) {
  if (!best_) {
    best_ = candidate;
    return true;
  }
  const Pick pick = comparator_ == AltComparator::kQuality ? decide_quality(*best_, candidate, params_, cfg_)
                                                            : decide_procedure(*best_, candidate, params_, cfg_);
  const bool replace = pick == Pick::kSecond;
  if (replace) best_ = candidate;
  return replace;
}

}  // namespace regsel
