#include "regsel/report.hpp"

#include "regsel/error.hpp"
#include "regsel/metrics.hpp"

namespace regsel {
namespace {

using nlohmann::json;

json subset_names(const Dataset& dataset, const CandidateSubset& subset) {
  json names = json::array();
  for (int j : subset) names.push_back(dataset.names()[static_cast<std::size_t>(j)]);
  return names;
}

json diagnostics_to_json(const DiagnosticsReport& r) {
  return json{{"pi", r.pi},
              {"E", r.e},
              {"r_l", r.r_l},
              {"linearity_slope", r.linearity_slope},
              {"p_abs_residual", r.p_abs_residual},
              {"p_breusch_pagan", r.p_breusch_pagan},
              {"r_h", r.r_h},
              {"passes_ttests", r.passes_ttests},
              {"passes_linearity", r.passes_linearity},
              {"passes_hetero", r.passes_hetero},
              {"feasible", r.feasible},
              {"usable", r.usable}};
}

json parameters_to_json(const SolverConfig& c) {
  return json{{"alpha_e", c.significance.alpha_e},
              {"alpha_l", c.significance.alpha_l},
              {"alpha_h", c.significance.alpha_h},
              {"residual_tests", c.significance.residual_tests},
              {"lambda_mse", c.penalty.lambda_mse},
              {"lambda_pi", c.penalty.lambda_pi},
              {"lambda_e", c.penalty.lambda_e},
              {"lambda_l", c.penalty.lambda_l},
              {"lambda_h", c.penalty.lambda_h},
              {"tau", c.penalty.tau},
              {"bigm_samples", c.big_m.num_samples},
              {"bigm_safety", c.big_m.safety_factor},
              {"seed", c.big_m.seed},
              {"time_limit", c.time_limit_seconds},
              {"threads", c.threads}};
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::kLazy:
      return "lazy";
    case Method::kBase:
      return "base";
    case Method::kForward:
      return "fs";
    case Method::kIterative:
      return "iter";
    case Method::kPenalty:
      return "penalty";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kLazy, Method::kBase, Method::kForward, Method::kIterative, Method::kPenalty}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "' (expected lazy, base, fs, iter or penalty)");
}

json fit_to_json(const Dataset& dataset, const FitResult& fit, const DiagnosticsReport& report) {
  json columns = json::array();
  for (int i = 0; i < fit.k(); ++i) {
    const int j = fit.subset[static_cast<std::size_t>(i)];
    json col{{"index", j},
             {"name", dataset.names()[static_cast<std::size_t>(j)]},
             {"coefficient", fit.coefficients(i)},
             {"std_error", fit.std_errors(i)},
             {"p_value", report.coef_pvalues[static_cast<std::size_t>(i)]}};
    columns.push_back(std::move(col));
  }
  return json{{"columns", std::move(columns)},
              {"sse", fit.sse},
              {"mse", fit.mse},
              {"dof", fit.dof},
              {"rank", fit.rank},
              {"full_rank", fit.full_rank},
              {"adjusted_r2", adjusted_r2(fit, dataset.n(), fit.k())},
              {"diagnostics", diagnostics_to_json(report)}};
}

json outcome_to_json(const Dataset& dataset, const SolveOutcome& outcome, const ReportContext& context) {
  json out;
  out["schema"] = kReportSchema;
  out["dataset"] = context.dataset_id;
  out["input"] = context.input;
  out["response"] = dataset.response_name();
  out["method"] = std::string(to_string(context.method));
  out["k"] = context.k;
  out["n"] = dataset.n();
  out["m"] = dataset.m();
  out["status"] = std::string(to_string(outcome.status));
  if (context.config) out["parameters"] = parameters_to_json(*context.config);

  out["solution"] = nullptr;
  if (outcome.fit && outcome.diagnostics) out["solution"] = fit_to_json(dataset, *outcome.fit, *outcome.diagnostics);

  out["alternative"] = nullptr;
  if (outcome.alt) {
    json alt = fit_to_json(dataset, outcome.alt->fit, outcome.alt->diagnostics);
    if (context.config) {
      alt["q"] = penalty_q(outcome.alt->candidate, context.config->penalty, context.config->significance);
    }
    out["alternative"] = std::move(alt);
  }

  out["bounds"] = nullptr;
  if (outcome.bounds) {
    const auto& b = *outcome.bounds;
    out["bounds"] = json{{"big_m", b.big_m},
                         {"mse_lb", b.mse_lb},
                         {"s_lb", b.s_lb},
                         {"inverse_gram_lb", b.inverse_gram_lb},
                         {"t_crit", b.t_crit},
                         {"relaxation_converged", b.relaxation_converged}};
  }

  const auto& s = outcome.stats;
  json cuts = json::array();
  for (const auto& c : outcome.cuts) cuts.push_back(subset_names(dataset, c));
  out["search"] = json{{"nodes_explored", s.nodes_explored},
                       {"nodes_pruned", s.nodes_pruned},
                       {"bound_fits", s.bound_fits},
                       {"candidates_evaluated", s.candidates_evaluated},
                       {"candidates_checked", s.candidates_checked},
                       {"prefilter_cuts", s.prefilter_cuts},
                       {"cuts_added", s.cuts_added},
                       {"exhausted", s.exhausted},
                       {"cuts", std::move(cuts)}};

  if (context.iterations) {
    json iters = json::array();
    for (const auto& step : context.iterations->iterations) {
      iters.push_back(json{{"subset", subset_names(dataset, step.subset)},
                           {"pi", step.diagnostics.pi},
                           {"E", step.diagnostics.e},
                           {"cut_added", step.cut_added},
                           {"solve_status", std::string(to_string(step.solve_status))}});
    }
    out["iterations"] = json{{"solver_calls", context.iterations->solver_calls}, {"steps", std::move(iters)}};
  }
  if (context.forward) {
    json order = json::array();
    for (int j : context.forward->order) order.push_back(dataset.names()[static_cast<std::size_t>(j)]);
    out["forward_order"] = std::move(order);
    out["forward_sse"] = context.forward->sse;
  }

  const auto adj = outcome_adjusted_r2(outcome, dataset.n());
  out["adjusted_r2"] = adj ? json(*adj) : json(nullptr);
  out["rep"] = context.rep ? json(*context.rep) : json(nullptr);
  out["wall_time"] = outcome.wall_time;
  return out;
}

}  // namespace regsel
