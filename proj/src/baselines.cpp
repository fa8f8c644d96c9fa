#include "regsel/baselines.hpp"

#include <chrono>
#include <limits>

#include "regsel/error.hpp"
#include "regsel/linalg.hpp"

namespace regsel {

ForwardSelection forward_select(const Dataset& dataset, int k) {
  validate_request(dataset, k);
  const int m = dataset.m();
  std::vector<char> candidate(static_cast<std::size_t>(2 * m), 1);
  ForwardSelection out;
  std::vector<int> selected;
  while (static_cast<int>(selected.size()) < k) {
    int best = -1;
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<int> trial = selected;
    trial.push_back(0);
    for (int j = 0; j < 2 * m; ++j) {
      if (!candidate[static_cast<std::size_t>(j)]) continue;
      trial.back() = j;
      // Every trial has the same size, so minimum MSE = minimum SSE.
      const double sse = fit_columns(dataset, trial).sse;
      if (sse < best_sse) {
        best_sse = sse;
        best = j;
      }
    }
    if (best < 0) throw Error("forward selection ran out of candidate columns");
    selected.push_back(best);
    candidate[static_cast<std::size_t>(best)] = 0;
    candidate[static_cast<std::size_t>(paired_column(best, m))] = 0;
    out.order.push_back(best);
    out.sse.push_back(best_sse);
  }
  out.subset = CandidateSubset(selected);
  return out;
}

IterativeResult solve_iterative(const Dataset& dataset, int k, const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  config.validate();
  validate_request(dataset, k);
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  IterativeResult result;
  CutPool cuts;
  SolverConfig call_config = config;
  SearchStats totals;
  std::optional<FitResult> last_fit;
  std::optional<DiagnosticsReport> last_report;
  bool significant = false;
  bool exhausted_space = false;
  SolveStatus last_status = SolveStatus::kOptimal;

  while (true) {
    const double remaining = config.time_limit_seconds - elapsed();
    if (remaining <= 0.0 && result.trace.solver_calls > 0) break;
    call_config.time_limit_seconds = std::max(remaining, 1e-3);
    auto solved = solve_base(dataset, k, call_config, cuts);
    ++result.trace.solver_calls;
    totals.nodes_explored += solved.stats.nodes_explored;
    totals.nodes_pruned += solved.stats.nodes_pruned;
    totals.bound_fits += solved.stats.bound_fits;
    totals.candidates_evaluated += solved.stats.candidates_evaluated;
    if (!solved.fit) {
      exhausted_space = true;
      break;
    }
    last_status = solved.status;
    IterStep step;
    step.subset = solved.fit->subset;
    step.solve_status = solved.status;
    step.diagnostics = solved.diagnostics ? *solved.diagnostics
                                          : run_diagnostics(dataset, *solved.fit, config.significance);
    significant = step.diagnostics.usable && step.diagnostics.pi == 0;
    last_fit = std::move(solved.fit);
    last_report = step.diagnostics;
    if (significant) {
      result.trace.iterations.push_back(std::move(step));
      break;
    }
    cuts.add(step.subset);
    ++totals.cuts_added;
    step.cut_added = true;
    result.trace.iterations.push_back(std::move(step));
  }

  SolveOutcome& out = result.outcome;
  out.cuts = cuts.cuts();
  totals.exhausted = exhausted_space || (significant && last_status == SolveStatus::kOptimal);
  out.stats = totals;
  if (significant) {
    out.status = last_status == SolveStatus::kOptimal ? SolveStatus::kOptimal : SolveStatus::kBestFeasible;
    out.fit = std::move(last_fit);
    out.diagnostics = std::move(last_report);
  } else {
    out.status = exhausted_space ? SolveStatus::kInfeasibleWithAlternative : SolveStatus::kAlternative;
    if (last_fit) {
      out.alt = AltSolution{AltCandidate::from(*last_fit, *last_report), std::move(*last_fit),
                            std::move(*last_report)};
    }
  }
  out.wall_time = elapsed();
  return result;
}

}  // namespace regsel
