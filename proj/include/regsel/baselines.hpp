#pragma once

#include <vector>

#include "regsel/data.hpp"
#include "regsel/diagnostics.hpp"
#include "regsel/solver.hpp"
#include "regsel/subset.hpp"

namespace regsel {

struct ForwardSelection {
  CandidateSubset subset;
  std::vector<int> order;   // columns in the order they were added
  std::vector<double> sse;  // SSE after each addition
};

/// Greedy forward selection over original and log columns: each step adds
/// the column giving the smallest MSE, then retires it together with its
/// partner.
[[nodiscard]] ForwardSelection forward_select(const Dataset& dataset, int k);

struct IterStep {
  CandidateSubset subset;
  DiagnosticsReport diagnostics;
  bool cut_added = false;
  SolveStatus solve_status = SolveStatus::kOptimal;
};

struct IterTrace {
  std::vector<IterStep> iterations;
  int solver_calls = 0;
};

struct IterativeResult {
  SolveOutcome outcome;
  IterTrace trace;
};

/// Re-solves the base problem, cutting each returned subset that has an
/// insignificant coefficient, until a fully significant subset appears or
/// the time limit runs out. Only coefficient t-tests decide.
[[nodiscard]] IterativeResult solve_iterative(const Dataset& dataset, int k, const SolverConfig& config);

}  // namespace regsel
