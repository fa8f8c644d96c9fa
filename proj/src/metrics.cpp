#include "regsel/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace regsel {
namespace {

bool is_feasible_status(SolveStatus s) { return s == SolveStatus::kOptimal || s == SolveStatus::kBestFeasible; }

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::optional<double> outcome_adjusted_r2(const SolveOutcome& outcome, int n) {
  const FitResult* fit = outcome.reported_fit();
  if (!fit) return std::nullopt;
  return adjusted_r2(*fit, n, fit->k());
}

std::optional<double> rep(double method_adjusted_r2, double base_adjusted_r2) {
  if (!(base_adjusted_r2 > 0.0)) return std::nullopt;
  return method_adjusted_r2 / base_adjusted_r2;
}

std::optional<double> rep(const SolveOutcome& method, const SolveOutcome& base, int n) {
  const auto a = outcome_adjusted_r2(method, n);
  const auto b = outcome_adjusted_r2(base, n);
  if (!a || !b) return std::nullopt;
  return rep(*a, *b);
}

ComparisonRow make_row(std::string dataset, int k, std::string method, const SolveOutcome& outcome, int n,
                       const SolveOutcome* base) {
  ComparisonRow row;
  row.dataset = std::move(dataset);
  row.k = k;
  row.method = std::move(method);
  row.status = outcome.status;
  row.adjusted_r2 = outcome_adjusted_r2(outcome, n).value_or(std::nan(""));
  if (base) row.rep = rep(outcome, *base, n);
  if (const auto* report = outcome.reported_diagnostics()) {
    row.pi = report->pi;
    row.e = report->e;
    row.r_l = report->r_l;
    row.r_h = report->r_h;
    row.passes_ttests = report->passes_ttests;
    row.passes_residual_tests = report->passes_linearity && report->passes_hetero;
  }
  row.wall_time = outcome.wall_time;
  return row;
}

std::optional<double> mean_rep(const std::vector<ComparisonRow>& rows, bool feasible_only) {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows) {
    if (!row.rep) continue;
    if (feasible_only && !is_feasible_status(row.status)) continue;
    sum += *row.rep;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

std::vector<SummaryRow> summarize(const std::vector<ComparisonRow>& rows, GroupBy group) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<ComparisonRow>> groups;
  for (const auto& row : rows) {
    const std::string key = group == GroupBy::kDataset ? row.dataset : std::to_string(row.k);
    auto id = std::make_pair(key, row.method);
    auto [it, inserted] = groups.try_emplace(id);
    if (inserted) keys.push_back(id);
    it->second.push_back(row);
  }
  std::vector<SummaryRow> out;
  for (const auto& id : keys) {
    const auto& members = groups[id];
    SummaryRow s;
    s.key = id.first;
    s.method = id.second;
    s.cases = static_cast<int>(members.size());
    s.rep = mean_rep(members, false);
    s.rep_feas = mean_rep(members, true);
    double time = 0.0;
    for (const auto& row : members) {
      if (row.passes_ttests && row.passes_residual_tests) ++s.ttest_and_residual;
      else if (row.passes_ttests) ++s.ttest_only;
      else if (row.passes_residual_tests) ++s.residual_only;
      time += row.wall_time;
    }
    s.mean_wall_time = members.empty() ? 0.0 : time / static_cast<double>(members.size());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ResidualPoint> residual_plot_data(const FitResult& fit) {
  std::vector<ResidualPoint> out;
  out.reserve(static_cast<std::size_t>(fit.residuals.size()));
  for (Eigen::Index i = 0; i < fit.residuals.size(); ++i) {
    out.push_back({fit.fitted(i), fit.residuals(i), std::abs(fit.residuals(i))});
  }
  return out;
}

void write_residual_csv(std::ostream& out, const std::vector<ResidualPoint>& points) {
  out << "fitted,residual,abs_residual\n";
  for (const auto& p : points) {
    out << format_double(p.fitted) << ',' << format_double(p.residual) << ',' << format_double(p.abs_residual)
        << '\n';
  }
}

std::string comparison_csv_header() {
  return "schema,dataset,k,method,status,adjusted_r2,rep,pi,E,r_l,r_h,passes_ttests,passes_residual_tests,wall_time";
}

std::string to_csv(const ComparisonRow& row) {
  std::ostringstream out;
  out << kRowSchema << ',' << row.dataset << ',' << row.k << ',' << row.method << ',' << to_string(row.status) << ','
      << format_double(row.adjusted_r2) << ',' << (row.rep ? format_double(*row.rep) : std::string()) << ','
      << row.pi << ',' << format_double(row.e) << ',' << format_double(row.r_l) << ',' << format_double(row.r_h)
      << ',' << (row.passes_ttests ? 1 : 0) << ',' << (row.passes_residual_tests ? 1 : 0) << ','
      << format_double(row.wall_time);
  return out.str();
}

}  // namespace regsel
