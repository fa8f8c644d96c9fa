#include <gtest/gtest.h>

#include "regsel/altsol.hpp"
#include "regsel/error.hpp"

namespace regsel {
namespace {

AltCandidate cand(int pi, double e, double mse = 1.0, double r_l = 1.0, double r_h = 1.0) {
  AltCandidate c;
  c.pi = pi;
  c.e = e;
  c.mse = mse;
  c.r_l = r_l;
  c.r_h = r_h;
  return c;
}

TEST(Transforms, WorkedValues) {
  EXPECT_DOUBLE_EQ(w2(0.2, 0.9), 0.0);
  EXPECT_NEAR(w2(0.04, 0.9), 0.6, 1e-12);
  EXPECT_NEAR(w2(0.05, 0.9), 0.5, 1e-12);
  EXPECT_NEAR(w1(0.15, 0.9), 0.05 / 0.9, 1e-12);
  EXPECT_DOUBLE_EQ(w1(0.05, 0.9), 0.0);
}

TEST(Transforms, RangeAndMonotonicity) {
  for (double alpha : {0.9, 0.95, 0.99}) {
    EXPECT_DOUBLE_EQ(w1(0.0, alpha), 0.0);
    EXPECT_NEAR(w1(1.0, alpha), 1.0, 1e-12);
    EXPECT_NEAR(w2(0.0, alpha), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(w2(1.0, alpha), 0.0);
    double prev1 = -1.0;
    double prev2 = 2.0;
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      EXPECT_GE(w1(p, alpha), prev1);
      EXPECT_LE(w2(p, alpha), prev2);
      EXPECT_GE(w1(p, alpha), 0.0);
      EXPECT_LE(w2(p, alpha), 1.0 + 1e-12);
      prev1 = w1(p, alpha);
      prev2 = w2(p, alpha);
    }
  }
}

TEST(PenaltyQ, SumOfWeightedTerms) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  const AltCandidate c = cand(2, 0.3, 0.8, 0.005, 0.002);
  const double expected = 4.0 * 0.8 + 0.5 * 2 + 6.0 * w1(0.3, 0.95) + 0.5 * w2(0.005, 0.99) + 0.5 * w2(0.002, 0.99);
  EXPECT_NEAR(penalty_q(c, params, cfg), expected, 1e-12);
  EXPECT_NEAR(penalty_q(cand(0, 0.0, 0.8), params, cfg), 3.2, 1e-12);
}

TEST(PenaltyQ, LinearInEachWeight) {
  const SignificanceConfig cfg;
  const AltCandidate c = cand(3, 0.4, 0.7, 0.001, 0.003);
  PenaltyParams zero{0, 0, 0, 0, 0, 0.1};
  EXPECT_EQ(penalty_q(c, zero, cfg), 0.0);
  PenaltyParams a = zero;
  a.lambda_e = 1.0;
  PenaltyParams b = zero;
  b.lambda_e = 3.0;
  EXPECT_NEAR(penalty_q(c, b, cfg), 3.0 * penalty_q(c, a, cfg), 1e-12);
  PenaltyParams mse = zero;
  mse.lambda_mse = 2.0;
  EXPECT_NEAR(penalty_q(c, mse, cfg), 1.4, 1e-12);
}

TEST(PenaltyParams, Validation) {
  EXPECT_NO_THROW(PenaltyParams{}.validate());
  PenaltyParams p;
  p.lambda_h = -0.1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = PenaltyParams{};
  p.tau = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(DecideQuality, LowerPenaltyWinsAndTiesKeepFirst) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  EXPECT_EQ(decide_quality(cand(1, 0.2, 1.0), cand(1, 0.2, 0.9), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_quality(cand(1, 0.2, 0.9), cand(1, 0.2, 1.0), params, cfg), Pick::kFirst);
  AltCandidate a = cand(2, 0.3, 0.5);
  AltCandidate b = a;
  b.subset = CandidateSubset{1, 2};
  EXPECT_EQ(decide_quality(a, b, params, cfg), Pick::kFirst);
}

TEST(DecideTolerance, Branches) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  // E jumps by more than tau: keep the incumbent even with fewer violations.
  EXPECT_EQ(decide_tolerance(cand(3, 0.06), cand(1, 0.95), params, cfg), Pick::kFirst);
  // Dominance either way.
  EXPECT_EQ(decide_tolerance(cand(3, 0.06), cand(2, 0.055), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_tolerance(cand(2, 0.055), cand(3, 0.06), params, cfg), Pick::kFirst);
  // Mixed direction within tau: q decides, so MSE matters.
  EXPECT_EQ(decide_tolerance(cand(3, 0.06, 0.5), cand(1, 0.065, 0.5), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_tolerance(cand(3, 0.06, 0.5), cand(1, 0.065, 5.0), params, cfg), Pick::kFirst);
}

TEST(DecideProcedure, SignificanceFirst) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  EXPECT_EQ(decide_procedure(cand(1, 0.06, 0.1), cand(0, 0.0, 50.0), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_procedure(cand(0, 0.0, 50.0), cand(1, 0.06, 0.1), params, cfg), Pick::kFirst);
  // Both significant: residual diagnostics enter through q.
  EXPECT_EQ(decide_procedure(cand(0, 0.0, 1.0, 0.001), cand(0, 0.0, 1.05), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_procedure(cand(0, 0.0, 1.0), cand(0, 0.0, 1.05, 0.001), params, cfg), Pick::kFirst);
}

TEST(DecideProcedure, FramingSwitchPoint) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  const AltCandidate current = cand(4, 0.2203);
  EXPECT_EQ(decide_procedure(current, cand(3, 0.2739), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_procedure(current, cand(3, 0.2793), params, cfg), Pick::kSecond);
  // Exactly where lambda_pi equals lambda_E * delta w1.
  const double gap = params.lambda_pi / params.lambda_e * cfg.alpha_e;
  EXPECT_EQ(decide_procedure(current, cand(3, 0.2203 + gap - 1e-6), params, cfg), Pick::kSecond);
  EXPECT_EQ(decide_procedure(current, cand(3, 0.2203 + gap + 1e-6), params, cfg), Pick::kFirst);
}

TEST(AspUpdate, EmptyStateTakesCandidate) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  const auto s = asp_update(std::nullopt, cand(2, 0.3), params, cfg);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->pi, 2);
  const auto kept = asp_update(s, cand(3, 0.35), params, cfg);
  EXPECT_EQ(kept->pi, 2);
  const auto replaced = asp_update(kept, cand(0, 0.0, 9.0), params, cfg);
  EXPECT_EQ(replaced->pi, 0);
}

TEST(AltState, AgreesWithAspUpdate) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  AltState state(AltComparator::kProcedure, params, cfg);
  std::optional<AltCandidate> reference;
  const std::vector<AltCandidate> stream{cand(3, 0.2), cand(2, 0.25, 2.0), cand(2, 0.5),   cand(1, 0.3, 1.5),
                                         cand(4, 0.1), cand(1, 0.28, 1.4), cand(0, 0, 3.0), cand(0, 0, 2.9)};
  for (const auto& c : stream) {
    const bool replaced = state.offer(c);
    const auto next = asp_update(reference, c, params, cfg);
    EXPECT_EQ(replaced, !reference || next->pi != reference->pi || next->e != reference->e ||
                            next->mse != reference->mse);
    reference = next;
    EXPECT_EQ(state.best()->pi, reference->pi);
    EXPECT_EQ(state.best()->mse, reference->mse);
  }
  EXPECT_EQ(state.best()->mse, 2.9);
}

TEST(AltState, QualityComparatorUsesPenaltyOnly) {
  const SignificanceConfig cfg;
  const PenaltyParams params;
  AltState quality(AltComparator::kQuality, params, cfg);
  AltState procedure(AltComparator::kProcedure, params, cfg);
  // Significant but very poor fit against one marginal violation with a good fit.
  const AltCandidate a = cand(1, 0.06, 0.2);
  const AltCandidate b = cand(0, 0.0, 3.0);
  EXPECT_TRUE(quality.offer(a));
  EXPECT_FALSE(quality.offer(b));
  EXPECT_TRUE(procedure.offer(a));
  EXPECT_TRUE(procedure.offer(b));
}

TEST(AltCandidate, FromFitAndReport) {
  FitResult fit;
  fit.subset = CandidateSubset{2, 5};
  fit.mse = 0.7;
  DiagnosticsReport report;
  report.pi = 1;
  report.e = 0.2;
  report.r_l = 0.3;
  report.r_h = 0.004;
  const AltCandidate c = AltCandidate::from(fit, report);
  EXPECT_EQ(c.subset, fit.subset);
  EXPECT_EQ(c.mse, 0.7);
  EXPECT_EQ(c.pi, 1);
  EXPECT_EQ(c.e, 0.2);
  EXPECT_EQ(c.r_l, 0.3);
  EXPECT_EQ(c.r_h, 0.004);
}

}  // namespace
}  // namespace regsel
