#include "regsel/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <queue>

#include "regsel/error.hpp"

namespace regsel {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kPruneTolerance = 1e-12;

enum class Mode { kBase, kLazy };

// A node together with the fit that produced its bound.
struct QueueEntry {
  SearchNode node;
  std::vector<int> columns;      // fixed_in + free legal, ascending
  Eigen::VectorXd coefficients;  // aligned with columns
  std::uint64_t sequence = 0;
};

struct EntryOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.node.lower_bound != b.node.lower_bound) return a.node.lower_bound > b.node.lower_bound;
    return a.sequence > b.sequence;
  }
};

// Count of pairs that still have a free legal column.
int free_pair_count(const std::vector<int>& free_columns, int m) {
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  int count = 0;
  for (int j : free_columns) {
    const int p = j % m;
    if (!seen[static_cast<std::size_t>(p)]) {
      seen[static_cast<std::size_t>(p)] = 1;
      ++count;
    }
  }
  return count;
}

class BranchAndBound {
 public:
  BranchAndBound(const Dataset& dataset, int k, Mode mode, const SolverConfig& config, const CutPool* excluded,
                 AltComparator comparator, Clock::time_point start)
      : dataset_(dataset),
        k_(k),
        m_(dataset.m()),
        mode_(mode),
        config_(config),
        excluded_(excluded),
        alt_(comparator, config.penalty, config.significance),
        start_(start),
        deadline_(start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(config.time_limit_seconds))) {}

  void set_bounds(const BoundContext& ctx) { ctx_ = ctx; }

  SolveOutcome run() {
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryOrder> open;
    if (auto root = evaluate(SearchNode{})) open.push(std::move(*root));

    bool first = true;
    while (!open.empty()) {
      if (!first && Clock::now() >= deadline_) break;
      first = false;
      QueueEntry entry = open.top();
      open.pop();
      if (entry.node.lower_bound >= incumbent_value() - kPruneTolerance) {
        ++stats_.nodes_pruned;
        continue;
      }
      ++stats_.nodes_explored;
      for (auto& child : expand(entry)) open.push(std::move(child));
    }
    stats_.exhausted = open.empty();
    return finish();
  }

 private:
  double incumbent_value() const {
    return incumbent_ ? incumbent_->sse : std::numeric_limits<double>::infinity();
  }

  bool improves(const FitResult& fit) const {
    if (!incumbent_) return true;
    const double tol = kPruneTolerance * std::max(1.0, incumbent_->sse);
    if (fit.sse < incumbent_->sse - tol) return true;
    return std::abs(fit.sse - incumbent_->sse) <= tol && fit.subset < incumbent_->subset;
  }

  std::optional<QueueEntry> evaluate(SearchNode node) const {
    QueueEntry entry;
    entry.columns = node.fixed_in;
    const auto free_columns = free_legal_columns(dataset_, node);
    if (static_cast<int>(node.fixed_in.size()) + free_pair_count(free_columns, m_) < k_) return std::nullopt;
    if (static_cast<int>(node.fixed_in.size()) < k_) {
      entry.columns.insert(entry.columns.end(), free_columns.begin(), free_columns.end());
      std::sort(entry.columns.begin(), entry.columns.end());
    }
    const auto sol = fit_columns(dataset_, entry.columns);
    node.lower_bound = sol.sse;
    entry.coefficients = sol.coefficients;
    entry.node = std::move(node);
    return entry;
  }

  std::vector<QueueEntry> expand(const QueueEntry& entry) {
    const SearchNode& node = entry.node;
    const int fixed = static_cast<int>(node.fixed_in.size());

    std::vector<int> free_columns;
    for (int j : entry.columns) {
      if (!std::binary_search(node.fixed_in.begin(), node.fixed_in.end(), j)) free_columns.push_back(j);
    }
    // Leaf: the only completion is every remaining column.
    const int free_pairs = free_pair_count(free_columns, m_);
    if (fixed == k_ || (free_pairs == k_ - fixed && static_cast<int>(free_columns.size()) == free_pairs)) {
      consider(CandidateSubset(entry.columns));
      return {};
    }

    // Heuristic completion: fixed columns plus the largest free
    // coefficients, skipping partners of columns already taken.
    std::vector<std::size_t> order(entry.columns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(entry.coefficients(static_cast<Eigen::Index>(a))) >
             std::abs(entry.coefficients(static_cast<Eigen::Index>(b)));
    });
    std::vector<int> heuristic = node.fixed_in;
    std::vector<char> pair_used(static_cast<std::size_t>(m_), 0);
    for (int j : heuristic) pair_used[static_cast<std::size_t>(j % m_)] = 1;
    int branch_column = -1;
    for (std::size_t idx : order) {
      const int j = entry.columns[idx];
      if (std::binary_search(node.fixed_in.begin(), node.fixed_in.end(), j)) continue;
      if (branch_column < 0) branch_column = j;
      if (static_cast<int>(heuristic.size()) < k_ && !pair_used[static_cast<std::size_t>(j % m_)]) {
        heuristic.push_back(j);
        pair_used[static_cast<std::size_t>(j % m_)] = 1;
      }
    }
    consider(CandidateSubset(heuristic));

    SearchNode include = node;
    include.fixed_in.insert(std::upper_bound(include.fixed_in.begin(), include.fixed_in.end(), branch_column),
                            branch_column);
    SearchNode exclude = node;
    exclude.fixed_out.insert(std::upper_bound(exclude.fixed_out.begin(), exclude.fixed_out.end(), branch_column),
                             branch_column);

    std::optional<QueueEntry> children[2];
    if (config_.threads > 1) {
      auto later = std::async(std::launch::async, [&] { return evaluate(exclude); });
      children[0] = evaluate(include);
      children[1] = later.get();
    } else {
      children[0] = evaluate(include);
      children[1] = evaluate(exclude);
    }
    std::vector<QueueEntry> out;
    for (auto& child : children) {
      if (!child) continue;
      ++stats_.bound_fits;
      if (child->node.lower_bound >= incumbent_value() - kPruneTolerance) {
        ++stats_.nodes_pruned;
        continue;
      }
      child->sequence = ++sequence_;
      out.push_back(std::move(*child));
    }
    return out;
  }

  void consider(const CandidateSubset& subset) {
    if (excluded_ && excluded_->contains(subset)) return;
    if (mode_ == Mode::kLazy && cuts_.contains(subset)) return;
    if (!seen_.insert(subset).second) return;
    ++stats_.candidates_evaluated;

    if (mode_ == Mode::kBase) {
      auto fit = ols_fit(dataset_, subset);
      if (improves(fit)) incumbent_ = std::move(fit);
      return;
    }

    FitResult fit = ols_fit(dataset_, subset);
    if (!improves(fit)) return;
    ++stats_.candidates_checked;
    auto check = check_candidate(dataset_, subset, config_.significance, ctx_);
    if (check.verdict == Verdict::kFeasible) {
      incumbent_ = std::move(check.fit);
      incumbent_report_ = std::move(check.diagnostics);
      return;
    }
    if (check.prefiltered) ++stats_.prefilter_cuts;
    cuts_.add(subset);
    ++stats_.cuts_added;
    if (incumbent_) return;
    // Alternative-solution procedure runs only while nothing passes.
    DiagnosticsReport report = check.diagnostics ? std::move(*check.diagnostics)
                                                 : run_diagnostics(dataset_, check.fit, config_.significance);
    if (alt_.offer(AltCandidate::from(check.fit, report))) {
      alt_solution_ = AltSolution{*alt_.best(), std::move(check.fit), std::move(report)};
    }
  }

  SolveOutcome finish() {
    SolveOutcome out;
    out.stats = stats_;
    out.cuts = cuts_.cuts();
    if (mode_ == Mode::kLazy) out.bounds = ctx_;
    if (incumbent_) {
      out.status = stats_.exhausted ? SolveStatus::kOptimal : SolveStatus::kBestFeasible;
      if (!incumbent_report_) incumbent_report_ = run_diagnostics(dataset_, *incumbent_, config_.significance);
      out.fit = std::move(incumbent_);
      out.diagnostics = std::move(incumbent_report_);
    } else {
      out.status = stats_.exhausted ? SolveStatus::kInfeasibleWithAlternative : SolveStatus::kAlternative;
      out.alt = std::move(alt_solution_);
    }
    out.wall_time = std::chrono::duration<double>(Clock::now() - start_).count();
    return out;
  }

  const Dataset& dataset_;
  int k_;
  int m_;
  Mode mode_;
  const SolverConfig& config_;
  const CutPool* excluded_;
  BoundContext ctx_;
  AltState alt_;
  std::optional<AltSolution> alt_solution_;
  Clock::time_point start_;
  Clock::time_point deadline_;

  std::optional<FitResult> incumbent_;
  std::optional<DiagnosticsReport> incumbent_report_;
  CutPool cuts_;
  std::unordered_set<CandidateSubset, CandidateSubsetHash> seen_;
  SearchStats stats_;
  std::uint64_t sequence_ = 0;
};

SolveOutcome solve_with_alternatives(const Dataset& dataset, int k, const SolverConfig& config,
                                     AltComparator comparator) {
  config.validate();
  validate_request(dataset, k);
  const auto start = Clock::now();
  BranchAndBound search(dataset, k, Mode::kLazy, config, nullptr, comparator, start);
  search.set_bounds(compute_bound_context(dataset, k, config.big_m, config.significance, config.threads));
  return search.run();
}

}  // namespace

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kBestFeasible:
      return "best_feasible";
    case SolveStatus::kAlternative:
      return "alternative";
    case SolveStatus::kInfeasibleWithAlternative:
      return "infeasible_with_alternative";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  significance.validate();
  penalty.validate();
  if (big_m.num_samples < 1) throw ConfigError("big-M sample count must be at least 1");
  if (!(big_m.safety_factor > 0.0)) throw ConfigError("big-M safety factor must be positive");
  if (!(time_limit_seconds > 0.0)) throw ConfigError("time limit must be positive");
  if (threads < 1) throw ConfigError("thread count must be at least 1");
}

void validate_request(const Dataset& dataset, int k) {
  if (k < 1 || k > dataset.m()) {
    throw ConfigError("k = " + std::to_string(k) + " outside [1, m = " + std::to_string(dataset.m()) + "]");
  }
  if (dataset.n() < k + 2) {
    throw ConfigError("need n >= k + 2 observations (n = " + std::to_string(dataset.n()) + ", k = " +
                      std::to_string(k) + ")");
  }
}

std::vector<int> free_legal_columns(const Dataset& dataset, const SearchNode& node) {
  const int m = dataset.m();
  std::vector<int> out;
  for (int j = 0; j < 2 * m; ++j) {
    if (std::binary_search(node.fixed_in.begin(), node.fixed_in.end(), j)) continue;
    if (std::binary_search(node.fixed_out.begin(), node.fixed_out.end(), j)) continue;
    if (std::binary_search(node.fixed_in.begin(), node.fixed_in.end(), paired_column(j, m))) continue;
    out.push_back(j);
  }
  return out;
}

double node_bound(const Dataset& dataset, const SearchNode& node) {
  std::vector<int> columns = node.fixed_in;
  const auto free_columns = free_legal_columns(dataset, node);
  columns.insert(columns.end(), free_columns.begin(), free_columns.end());
  std::sort(columns.begin(), columns.end());
  return fit_columns(dataset, columns).sse;
}

bool CutPool::add(const CandidateSubset& subset) {
  if (!set_.insert(subset).second) return false;
  order_.push_back(subset);
  return true;
}

CandidateCheck check_candidate(const Dataset& dataset, const CandidateSubset& subset, const SignificanceConfig& cfg,
                               const BoundContext& ctx) {
  CandidateCheck out;
  out.fit = ols_fit(dataset, subset);
  if (out.fit.full_rank && !relaxed_ttest_filter(out.fit, ctx)) {
    out.prefiltered = true;
    out.verdict = Verdict::kCut;
    return out;
  }
  out.diagnostics = run_diagnostics(dataset, out.fit, cfg);
  out.verdict = out.diagnostics->feasible ? Verdict::kFeasible : Verdict::kCut;
  return out;
}

const FitResult* SolveOutcome::reported_fit() const noexcept {
  if (fit) return &*fit;
  if (alt) return &alt->fit;
  return nullptr;
}

const DiagnosticsReport* SolveOutcome::reported_diagnostics() const noexcept {
  if (diagnostics) return &*diagnostics;
  if (alt) return &alt->diagnostics;
  return nullptr;
}

SolveOutcome solve_base(const Dataset& dataset, int k, const SolverConfig& config) {
  return solve_base(dataset, k, config, CutPool{});
}

SolveOutcome solve_base(const Dataset& dataset, int k, const SolverConfig& config, const CutPool& excluded) {
  config.validate();
  validate_request(dataset, k);
  BranchAndBound search(dataset, k, Mode::kBase, config, &excluded, AltComparator::kProcedure, Clock::now());
  auto out = search.run();
  if (!out.fit) {
    // Every subset excluded.
    out.status = SolveStatus::kInfeasibleWithAlternative;
  }
  return out;
}

SolveOutcome solve_lazy(const Dataset& dataset, int k, const SolverConfig& config) {
  return solve_with_alternatives(dataset, k, config, AltComparator::kProcedure);
}

SolveOutcome solve_penalty(const Dataset& dataset, int k, const SolverConfig& config) {
  return solve_with_alternatives(dataset, k, config, AltComparator::kQuality);
}

}  // namespace regsel
