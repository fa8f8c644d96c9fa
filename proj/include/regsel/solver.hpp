#pragma once

#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "regsel/altsol.hpp"
#include "regsel/bounds.hpp"
#include "regsel/data.hpp"
#include "regsel/diagnostics.hpp"
#include "regsel/linalg.hpp"
#include "regsel/subset.hpp"

namespace regsel {

enum class SolveStatus {
  kOptimal,                    // tree exhausted, incumbent passes every test
  kBestFeasible,               // time limit hit with a passing incumbent
  kAlternative,                // time limit hit, no passing subset found yet
  kInfeasibleWithAlternative,  // tree exhausted, no subset passes
};

[[nodiscard]] std::string_view to_string(SolveStatus status) noexcept;

struct SolverConfig {
  SignificanceConfig significance;
  PenaltyParams penalty;
  BigMOptions big_m;
  double time_limit_seconds = 600.0;
  int threads = 1;

  void validate() const;
};

/// Branch-and-bound node over column inclusion decisions.
struct SearchNode {
  std::vector<int> fixed_in;   // sorted, pair-legal
  std::vector<int> fixed_out;  // sorted
  double lower_bound = 0.0;
};

/// Columns of `node` that may still enter a completion: not fixed either
/// way and not the partner of a fixed-in column.
[[nodiscard]] std::vector<int> free_legal_columns(const Dataset& dataset, const SearchNode& node);

/// SSE of the least-squares fit on fixed_in plus every free legal column;
/// no completion of the node can do better.
[[nodiscard]] double node_bound(const Dataset& dataset, const SearchNode& node);

/// No-good cuts. With the cardinality fixed at k, the cut
/// sum_{j in S} z_j <= k - 1 removes exactly the subset S.
class CutPool {
 public:
  /// Returns false if the subset was already cut.
  bool add(const CandidateSubset& subset);
  [[nodiscard]] bool contains(const CandidateSubset& subset) const { return set_.contains(subset); }
  [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
  /// Cuts in insertion order.
  [[nodiscard]] const std::vector<CandidateSubset>& cuts() const noexcept { return order_; }

 private:
  std::unordered_set<CandidateSubset, CandidateSubsetHash> set_;
  std::vector<CandidateSubset> order_;
};

enum class Verdict { kFeasible, kCut };

struct CandidateCheck {
  Verdict verdict = Verdict::kCut;
  FitResult fit;
  /// Absent when the relaxed t-test filter already proved a violation.
  std::optional<DiagnosticsReport> diagnostics;
  bool prefiltered = false;
};

[[nodiscard]] CandidateCheck check_candidate(const Dataset& dataset, const CandidateSubset& subset,
                                             const SignificanceConfig& cfg, const BoundContext& ctx);

struct SearchStats {
  long nodes_explored = 0;
  long nodes_pruned = 0;
  long bound_fits = 0;
  long candidates_evaluated = 0;
  long candidates_checked = 0;
  long prefilter_cuts = 0;
  long cuts_added = 0;
  bool exhausted = false;
};

struct AltSolution {
  AltCandidate candidate;
  FitResult fit;
  DiagnosticsReport diagnostics;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kOptimal;
  std::optional<FitResult> fit;
  std::optional<DiagnosticsReport> diagnostics;
  std::optional<AltSolution> alt;
  std::optional<BoundContext> bounds;
  std::vector<CandidateSubset> cuts;
  SearchStats stats;
  double wall_time = 0.0;

  /// The incumbent if there is one, else the alternative's fit.
  [[nodiscard]] const FitResult* reported_fit() const noexcept;
  [[nodiscard]] const DiagnosticsReport* reported_diagnostics() const noexcept;
};

/// Minimum-SSE pair-legal k-subset, no diagnostics enforced (the report of
/// the winner is attached).
[[nodiscard]] SolveOutcome solve_base(const Dataset& dataset, int k, const SolverConfig& config);

/// As above, but subsets in `excluded` are infeasible.
[[nodiscard]] SolveOutcome solve_base(const Dataset& dataset, int k, const SolverConfig& config,
                                      const CutPool& excluded);

/// Minimum-SSE subset that passes every diagnostic, found in one search
/// with lazily added no-good cuts. While nothing passes, cut candidates
/// feed the alternative-solution procedure.
[[nodiscard]] SolveOutcome solve_lazy(const Dataset& dataset, int k, const SolverConfig& config);

/// solve_lazy with the alternative chosen by the penalty q alone.
[[nodiscard]] SolveOutcome solve_penalty(const Dataset& dataset, int k, const SolverConfig& config);

/// Throws ConfigError unless 1 <= k <= m and n >= k + 2.
void validate_request(const Dataset& dataset, int k);

}  // namespace regsel
