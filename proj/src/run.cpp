#include "regsel/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "regsel/baselines.hpp"
#include "regsel/data.hpp"
#include "regsel/error.hpp"
#include "regsel/metrics.hpp"

namespace regsel {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = trim(value);
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || v.empty()) {
    throw ConfigError("invalid value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("invalid value '" + value + "' for " + key);
}

std::vector<Method> parse_methods(const std::string& value) {
  std::vector<Method> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Method m = parse_method(trim(item));
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw ConfigError("no method given");
  return out;
}

struct MethodResult {
  SolveOutcome outcome;
  std::optional<IterTrace> trace;
  std::optional<ForwardSelection> forward;
};

// Forward selection has no optimality claim: a passing subset is reported
// as best_feasible, otherwise as an alternative.
SolveOutcome forward_outcome(const Dataset& dataset, const ForwardSelection& fs, const SolverConfig& config) {
  SolveOutcome out;
  FitResult fit = ols_fit(dataset, fs.subset);
  DiagnosticsReport report = run_diagnostics(dataset, fit, config.significance);
  if (report.feasible) {
    out.status = SolveStatus::kBestFeasible;
    out.fit = std::move(fit);
    out.diagnostics = std::move(report);
  } else {
    out.status = SolveStatus::kAlternative;
    out.alt = AltSolution{AltCandidate::from(fit, report), std::move(fit), std::move(report)};
  }
  return out;
}

MethodResult solve_one(const Dataset& dataset, int k, Method method, const SolverConfig& config) {
  MethodResult r;
  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::kLazy:
      r.outcome = solve_lazy(dataset, k, config);
      break;
    case Method::kBase:
      r.outcome = solve_base(dataset, k, config);
      break;
    case Method::kPenalty:
      r.outcome = solve_penalty(dataset, k, config);
      break;
    case Method::kIterative: {
      IterativeResult it = solve_iterative(dataset, k, config);
      r.outcome = std::move(it.outcome);
      r.trace = std::move(it.trace);
      break;
    }
    case Method::kForward:
      r.forward = forward_select(dataset, k);
      r.outcome = forward_outcome(dataset, *r.forward, config);
      r.outcome.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      break;
  }
  return r;
}

}  // namespace

KRange parse_k_range(std::string_view text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  KRange r;
  if (colon == std::string::npos) {
    r.first = r.last = parse_number<int>("k", t);
  } else {
    r.first = parse_number<int>("k", t.substr(0, colon));
    r.last = parse_number<int>("k", t.substr(colon + 1));
  }
  if (r.first < 1 || r.last < r.first) throw ConfigError("invalid k range '" + t + "'");
  return r;
}

void RunConfig::validate() const {
  if (input.empty()) throw ConfigError("no input file given");
  if (response.empty()) throw ConfigError("no response column given");
  if (methods.empty()) throw ConfigError("no method given");
  if (k.first < 1 || k.last < k.first) throw ConfigError("invalid k range");
  solver.validate();
}

std::map<std::string, std::string> read_config_file(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out[std::move(key)] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  auto& s = c.solver;
  if (key == "input") {
    c.input = trim(value);
  } else if (key == "response") {
    c.response = trim(value);
  } else if (key == "delimiter") {
    const std::string v = value == "\\t" || value == "tab" ? "\t" : value;
    if (v.size() != 1) throw ConfigError("delimiter must be a single character");
    c.delimiter = v[0];
  } else if (key == "method") {
    c.methods = parse_methods(value);
  } else if (key == "k") {
    c.k = parse_k_range(value);
  } else if (key == "alpha-e") {
    s.significance.alpha_e = parse_number<double>(key, value);
  } else if (key == "alpha-l") {
    s.significance.alpha_l = parse_number<double>(key, value);
  } else if (key == "alpha-h") {
    s.significance.alpha_h = parse_number<double>(key, value);
  } else if (key == "residual-tests") {
    s.significance.residual_tests = parse_bool(key, value);
  } else if (key == "lambda-mse") {
    s.penalty.lambda_mse = parse_number<double>(key, value);
  } else if (key == "lambda-pi") {
    s.penalty.lambda_pi = parse_number<double>(key, value);
  } else if (key == "lambda-e") {
    s.penalty.lambda_e = parse_number<double>(key, value);
  } else if (key == "lambda-l") {
    s.penalty.lambda_l = parse_number<double>(key, value);
  } else if (key == "lambda-h") {
    s.penalty.lambda_h = parse_number<double>(key, value);
  } else if (key == "tau") {
    s.penalty.tau = parse_number<double>(key, value);
  } else if (key == "bigm-samples") {
    s.big_m.num_samples = parse_number<int>(key, value);
  } else if (key == "bigm-safety") {
    s.big_m.safety_factor = parse_number<double>(key, value);
  } else if (key == "seed") {
    s.big_m.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "time-limit") {
    s.time_limit_seconds = parse_number<double>(key, value);
  } else if (key == "threads") {
    s.threads = parse_number<int>(key, value);
  } else if (key == "out") {
    c.out = trim(value);
  } else if (key == "dataset-id") {
    c.dataset_id = trim(value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    config.validate();
    std::ifstream in(config.input);
    if (!in) throw ConfigError("cannot read input file '" + config.input.string() + "'");
    const RawTable raw = load_table(in, TableFormat{config.delimiter});
    PreprocessOptions opts;
    opts.response = config.response;
    const Dataset dataset = preprocess(raw, opts);
    const std::string id = config.dataset_id.empty() ? config.input.stem().string() : config.dataset_id;
    if (config.k.last > dataset.m()) {
      throw ConfigError("k = " + std::to_string(config.k.last) + " exceeds the number of predictors (" +
                        std::to_string(dataset.m()) + ")");
    }

    std::filesystem::create_directories(config.out);
    const auto rows_path = config.out / "comparison.csv";
    const bool new_rows = !std::filesystem::exists(rows_path);
    std::ofstream rows(rows_path, std::ios::app);
    if (!rows) throw ConfigError("cannot write '" + rows_path.string() + "'");
    if (new_rows) rows << comparison_csv_header() << '\n';

    // Base runs first so the other methods can report REP against it.
    std::vector<Method> order = config.methods;
    std::stable_partition(order.begin(), order.end(), [](Method m) { return m == Method::kBase; });

    bool infeasible = false;
    for (int k = config.k.first; k <= config.k.last; ++k) {
      validate_request(dataset, k);
      std::optional<SolveOutcome> base;
      for (Method method : order) {
        MethodResult r = solve_one(dataset, k, method, config.solver);
        if (method == Method::kBase) base = r.outcome;
        const SolveOutcome& o = r.outcome;
        if (o.status == SolveStatus::kInfeasibleWithAlternative) infeasible = true;

        const std::string name(to_string(method));
        const ComparisonRow row = make_row(id, k, name, o, dataset.n(), base ? &*base : nullptr);
        ReportContext ctx;
        ctx.dataset_id = id;
        ctx.input = config.input.string();
        ctx.method = method;
        ctx.k = k;
        ctx.config = &config.solver;
        ctx.rep = row.rep;
        ctx.iterations = r.trace ? &*r.trace : nullptr;
        ctx.forward = r.forward ? &*r.forward : nullptr;

        const std::string stem = id + "_k" + std::to_string(k) + "_" + name;
        {
          std::ofstream js(config.out / (stem + ".json"));
          js << outcome_to_json(dataset, o, ctx).dump(2) << '\n';
          if (!js) throw ConfigError("cannot write report for " + stem);
        }
        if (const FitResult* fit = o.reported_fit()) {
          std::ofstream csv(config.out / (stem + "_residuals.csv"));
          write_residual_csv(csv, residual_plot_data(*fit));
        }
        rows << to_csv(row) << '\n';
        rows.flush();

        log << id << " k=" << k << ' ' << name << ": " << to_string(o.status);
        if (const FitResult* fit = o.reported_fit()) {
          log << ' ' << fit->subset.to_string() << " sse=" << fit->sse;
        }
        log << '\n';
      }
    }
    return infeasible ? kExitInfeasible : kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace regsel
