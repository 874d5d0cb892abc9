// frontier-race: run, benchmark and inspect the cardinality-constrained portfolio solvers.
//
// Exit codes: 0 ok, 2 bad flags, 3 unreadable or malformed data file, 4 infeasible problem.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frontier/harness.hpp"
#include "frontier/report.hpp"

namespace fs = std::filesystem;
using namespace frontier;

namespace {

constexpr int kExitFlags = 2;
constexpr int kExitFile = 3;
constexpr int kExitInfeasible = 4;

struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Accepts the path as given, or with a ".txt" suffix when the bare name does not exist.
fs::path resolve_data(const std::string& given) {
  fs::path p(given);
  if (!fs::exists(p) && !p.has_extension()) {
    fs::path txt = p;
    txt += ".txt";
    if (fs::exists(txt)) return txt;
  }
  return p;
}

struct CommonFlags {
  std::string format = "json";
  std::size_t lambdas = 50;
  std::size_t k = 10;
  double min_weight = 0.01;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app->add_option("--lambdas", f.lambdas, "Number of lambda values on [0, 1]")->capture_default_str();
  app->add_option("--k", f.k, "Assets held by every portfolio")->capture_default_str();
  app->add_option("--min-weight", f.min_weight, "Minimum weight of a held asset")->capture_default_str();
  app->add_option("--seed", f.seed, "Random seed")->capture_default_str();
}

struct ProfileFlags {
  std::optional<double> t_max, alpha, p_replace, p_weights, profile_budget;
  std::optional<std::string> cooling, tabu_lists;
  std::optional<std::size_t> subset_size, tenure, population, pool_size;
  bool aspiration = false;
};

void add_profile(CLI::App* app, ProfileFlags& f) {
  app->add_option("--profile-budget", f.profile_budget, "Budget whose tuned settings are used");
  app->add_option("--t-max", f.t_max, "SA starting temperature");
  app->add_option("--alpha", f.alpha, "SA cooling factor");
  app->add_option("--cooling", f.cooling, "SA cooling: per-sweep or per-step")
      ->check(CLI::IsMember({"per-sweep", "per-step"}));
  app->add_option("--subset-size", f.subset_size, "TS neighbours drawn per step");
  app->add_option("--tenure", f.tenure, "TS tabu tenure");
  app->add_option("--tabu-lists", f.tabu_lists, "TS active lists: asset-in,asset-out,weight-up,weight-down|all|none");
  app->add_flag("--aspiration", f.aspiration, "TS: admit tabu moves that beat the best so far");
  app->add_option("--population", f.population, "GA population size");
  app->add_option("--pool-size", f.pool_size, "Random portfolios drawn for initialisation");
  app->add_option("--p-replace", f.p_replace, "GA asset-replacement mutation probability");
  app->add_option("--p-weights", f.p_weights, "GA weight-change mutation probability");
}

ProfileOverrides overrides_from(const ProfileFlags& f) {
  ProfileOverrides o;
  o.t_max = f.t_max;
  o.alpha = f.alpha;
  if (f.cooling) o.cooling = parse_cooling(*f.cooling);
  o.subset_size = f.subset_size;
  o.tenure = f.tenure;
  if (f.tabu_lists) {
    o.tabu_lists = parse_tabu_lists(*f.tabu_lists);
    if (!o.tabu_lists) throw FlagError("unknown tabu list in '" + *f.tabu_lists + "'");
  }
  if (f.aspiration) o.aspiration = true;
  o.population_size = f.population;
  o.pool_size = f.pool_size;
  o.p_replace = f.p_replace;
  o.p_weights = f.p_weights;
  return o;
}

struct StopFlags {
  std::optional<double> budget;
  std::optional<std::uint64_t> iterations;
};

void add_stop(CLI::App* app, StopFlags& f, bool required) {
  auto* b = app->add_option("--budget", f.budget, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  auto* i = app->add_option("--iterations", f.iterations, "Stop after this many full lambda sweeps (reproducible)")
                ->check(CLI::PositiveNumber);
  b->excludes(i);
  i->excludes(b);
  if (required) app->callback([app, b, i] {
    if (b->count() == 0 && i->count() == 0) throw CLI::RequiredError("--budget or --iterations");
    (void)app;
  });
}

std::shared_ptr<const AssetUniverse> load_assets(const std::string& given) {
  return std::make_shared<const AssetUniverse>(load_universe_file(resolve_data(given)));
}

ProblemSpec make_spec(std::shared_ptr<const AssetUniverse> u, const CommonFlags& c) {
  return ProblemSpec(std::move(u), c.k, c.min_weight, c.lambdas);
}

ErrorMethod method_from(const std::string& text) { return *parse_error_method(text); }

OutputFormat format_from(const std::string& text) { return *parse_output_format(text); }

struct RunFlags {
  CommonFlags common;
  ProfileFlags profile;
  StopFlags stop;
  std::string data, algo, eval = "combined";
  std::optional<std::string> uef, trace;
  bool filter_dominated = false;
};

void add_run_flags(CLI::App* app, RunFlags& f, bool uef_required) {
  app->add_option("--data", f.data, "Asset file (port format)")->required();
  app->add_option("--algo", f.algo, "Solver")->required()->check(CLI::IsMember({"sa", "ts", "ga"}));
  auto* uef = app->add_option("--uef", f.uef, "Frontier file (portef format) for error evaluation");
  if (uef_required) uef->required();
  app->add_option("--eval", f.eval, "Error method")
      ->check(CLI::IsMember({"combined", "linear", "euclidean"}))
      ->capture_default_str();
  app->add_flag("--filter-dominated", f.filter_dominated, "Drop dominated portfolios before the MPE");
  app->add_option("--trace", f.trace, "Write the convergence trace (CSV) to this file");
  add_common(app, f.common);
  add_profile(app, f.profile);
  add_stop(app, f.stop, true);
}

RunRequest request_from(const RunFlags& f) {
  RunRequest req;
  req.algorithm = *parse_algorithm(f.algo);
  if (f.stop.budget) req.budget_seconds = *f.stop.budget;
  req.sweep_cap = f.stop.iterations;
  req.profile_budget = f.profile.profile_budget;
  req.seed = f.common.seed;
  req.overrides = overrides_from(f.profile);
  return req;
}

RunContext context_from(const RunFlags& f, const ProblemSpec& spec) {
  RunContext c;
  c.dataset = dataset_name(resolve_data(f.data));
  c.assets = spec.asset_count();
  c.seed = f.common.seed;
  c.k = spec.k();
  c.min_weight = spec.min_weight();
  c.lambda_count = spec.lambda_count();
  c.budget_seconds = f.stop.budget.value_or(0.0);
  c.sweep_cap = f.stop.iterations;
  return c;
}

/// Records each lambda's best objective whenever it changes.
struct TraceWriter {
  std::ofstream out;
  std::vector<double> last;

  explicit TraceWriter(const std::string& path) : out(path) {
    if (!out) throw DatasetError("cannot write trace file " + path);
    out << "lambda_index,iteration,best_objective,elapsed_s\n";
  }
  void operator()(const ProgressEvent& e) {
    if (e.lambda_index >= last.size()) last.resize(e.lambda_index + 1, std::numeric_limits<double>::quiet_NaN());
    if (last[e.lambda_index] == e.best_objective) return;
    last[e.lambda_index] = e.best_objective;
    out << e.lambda_index << ',' << e.iteration << ',' << csv_number(e.best_objective) << ','
        << csv_number(e.elapsed_seconds) << '\n';
  }
};

int cmd_run(const RunFlags& f) {
  const ProblemSpec spec = make_spec(load_assets(f.data), f.common);
  std::optional<Uef> uef;
  if (f.uef) uef.emplace(load_uef_file(resolve_data(*f.uef)));
  RunRequest req = request_from(f);
  std::shared_ptr<TraceWriter> trace;
  if (f.trace) {
    trace = std::make_shared<TraceWriter>(*f.trace);
    req.on_progress = [trace](const ProgressEvent& e) { (*trace)(e); };
  }
  const RunOutcome outcome = execute_run(spec, req, uef ? &*uef : nullptr, method_from(f.eval), f.filter_dominated);
  write_run(std::cout, format_from(f.common.format), context_from(f, spec), outcome);
  return 0;
}

int cmd_frontier(const RunFlags& f) {
  const ProblemSpec spec = make_spec(load_assets(f.data), f.common);
  const Uef uef = load_uef_file(resolve_data(*f.uef));
  const DatasetRef ref{dataset_name(resolve_data(f.data)), resolve_data(f.data), resolve_data(*f.uef)};
  const FrontierTrace trace = frontier_trace(ref, spec, uef, request_from(f), method_from(f.eval));
  write_trace(std::cout, format_from(f.common.format), context_from(f, spec), trace);
  return 0;
}

struct PlanFlags {
  CommonFlags common;
  ProfileFlags profile;
  std::vector<std::string> data, uef;
  std::optional<std::string> data_dir;
  std::vector<std::string> algos{"sa", "ts", "ga"};
  std::vector<double> budgets{1.0, 5.0, 25.0};
  std::vector<std::size_t> repetitions{1};
  std::optional<std::uint64_t> iterations;
  std::string eval = "combined";
  bool filter_dominated = false;
};

void add_plan_flags(CLI::App* app, PlanFlags& f, bool with_algos) {
  app->add_option("--data", f.data, "Asset files (port format)")->delimiter(',');
  app->add_option("--uef", f.uef, "Frontier files, paired with --data in order")->delimiter(',');
  app->add_option("--data-dir", f.data_dir, "Directory holding port1..port5 and portef1..portef5");
  if (with_algos) {
    app->add_option("--algos", f.algos, "Solvers")->delimiter(',')->check(CLI::IsMember({"sa", "ts", "ga"}));
  }
  app->add_option("--budgets", f.budgets, "Budgets in seconds")->delimiter(',')->check(CLI::PositiveNumber);
  app->add_option("--repetitions", f.repetitions, "Runs per cell: one count, or one per budget")->delimiter(',');
  app->add_option("--iterations", f.iterations, "Cap every run at this many sweeps instead of its budget")
      ->check(CLI::PositiveNumber);
  app->add_option("--eval", f.eval, "Error method")
      ->check(CLI::IsMember({"combined", "linear", "euclidean"}))
      ->capture_default_str();
  app->add_flag("--filter-dominated", f.filter_dominated, "Drop dominated portfolios before the MPE");
  add_common(app, f.common);
  add_profile(app, f.profile);
}

ExperimentPlan plan_from(const PlanFlags& f) {
  ExperimentPlan plan;
  if (f.data_dir) {
    if (!f.data.empty()) throw FlagError("--data-dir and --data are mutually exclusive");
    for (int i = 1; i <= 5; ++i) {
      const std::string n = std::to_string(i);
      const fs::path dir(*f.data_dir);
      plan.datasets.push_back({"port" + n, resolve_data((dir / ("port" + n)).string()),
                               resolve_data((dir / ("portef" + n)).string())});
    }
  } else {
    if (f.data.empty()) throw FlagError("give --data (with --uef) or --data-dir");
    if (f.uef.size() != f.data.size()) throw FlagError("--uef must list one frontier file per --data file");
    for (std::size_t i = 0; i < f.data.size(); ++i) {
      const fs::path assets = resolve_data(f.data[i]);
      plan.datasets.push_back({dataset_name(assets), assets, resolve_data(f.uef[i])});
    }
  }
  plan.algorithms.clear();
  for (const auto& a : f.algos) plan.algorithms.push_back(*parse_algorithm(a));
  plan.budgets = f.budgets;
  plan.repetitions = f.repetitions;
  plan.base_seed = f.common.seed;
  plan.method = method_from(f.eval);
  plan.filter_dominated = f.filter_dominated;
  plan.lambda_count = f.common.lambdas;
  plan.k = f.common.k;
  plan.min_weight = f.common.min_weight;
  plan.sweep_cap = f.iterations;
  plan.workers = workers_from_env();
  plan.overrides = overrides_from(f.profile);
  try {
    validate(plan);
  } catch (const std::invalid_argument& e) {
    throw FlagError(e.what());
  }
  if (plan.workers > 1 && !plan.sweep_cap) {
    std::cerr << "warning: " << plan.workers
              << " concurrent wall-clock runs share the CPU; budgets may be distorted\n";
  }
  return plan;
}

/// Fails fast on an infeasible (k, l) for every dataset that loads.
void check_feasible_plan(const ExperimentPlan& plan) {
  if (plan.k * plan.min_weight > 1.0 + kWeightSumTolerance) {
    throw InfeasibleSpecError("k * min_weight exceeds 1");
  }
}

int cmd_bench(const PlanFlags& f) {
  const ExperimentPlan plan = plan_from(f);
  check_feasible_plan(plan);
  const AggregateReport report = run_experiment(plan);
  for (const auto& fail : report.failures) std::cerr << "error: " << fail.dataset << ": " << fail.message << '\n';
  write_bench(std::cout, format_from(f.common.format), report);
  return report.cells.empty() && !report.failures.empty() ? kExitFile : 0;
}

int cmd_tune_tabu(const PlanFlags& f, const std::vector<std::size_t>& tenures) {
  PlanFlags tabu = f;
  tabu.algos = {"ts"};
  const ExperimentPlan plan = plan_from(tabu);
  check_feasible_plan(plan);
  const auto combos = tabu_list_combinations();
  const TabuTuningReport report = tabu_tuning_grid(plan, tenures, combos);
  write_tuning(std::cout, format_from(f.common.format), report);
  return 0;
}

struct SamplingFlags {
  CommonFlags common;
  std::string data;
  std::optional<std::string> uef;
  std::size_t n = 1000;
};

int cmd_compare_sampling(const SamplingFlags& f) {
  const ProblemSpec spec = make_spec(load_assets(f.data), f.common);
  std::optional<Uef> uef;
  if (f.uef) uef.emplace(load_uef_file(resolve_data(*f.uef)));
  RngStream rng(f.common.seed);
  const SamplingComparison data = sampling_comparison(spec, f.n, rng);
  write_sampling(std::cout, format_from(f.common.format), dataset_name(resolve_data(f.data)), f.common.seed, data,
                 uef ? &*uef : nullptr);
  return 0;
}

void add_config(CLI::App* app, const std::string& names) {
  app->add_option(names)->description("Flat key = value file of flags (names without --); command-line flags win");
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Replaces `--config FILE` / `--plan FILE` with the flags the file lists. Keys already given on
/// the command line are skipped so that flags take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::size_t> at;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    for (const std::string name : {"--config", "--plan"}) {
      if (args[i] == name && i + 1 < args.size()) {
        path = args[i + 1];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        at = i;
      } else if (args[i].rfind(name + "=", 0) == 0) {
        path = args[i].substr(name.size() + 1);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        at = i;
      }
    }
    if (at) break;
  }
  if (!at) return args;

  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open config file " + path);
  std::vector<std::string> extra;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FlagError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string flag = "--" + trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (given(flag)) continue;
    if (value == "true") {
      extra.push_back(flag);
    } else if (value != "false") {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(*at), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cardinality-constrained mean-variance portfolio solvers under wall-clock budgets",
               "frontier-race"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Solve one problem and print the portfolios");
  add_config(run, "--config");
  add_run_flags(run, run_flags, false);

  RunFlags frontier_flags;
  auto* frontier = app.add_subcommand("frontier", "Emit solution and frontier point streams for plotting");
  add_config(frontier, "--config");
  add_run_flags(frontier, frontier_flags, true);

  PlanFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Run an experiment grid and report MPE and improvement tables");
  add_config(bench, "--plan,--config");
  add_plan_flags(bench, bench_flags, true);

  PlanFlags tune_flags;
  std::vector<std::size_t> tenures{3};
  auto* tune = app.add_subcommand("tune-tabu", "Tabu search over every tabu list combination");
  add_config(tune, "--config");
  add_plan_flags(tune, tune_flags, false);
  tune->add_option("--tenures", tenures, "Tenures to try")->delimiter(',')->capture_default_str();

  SamplingFlags sampling_flags;
  auto* sampling = app.add_subcommand("compare-sampling", "Random portfolios from both weight schemes");
  add_config(sampling, "--config");
  sampling->add_option("--data", sampling_flags.data, "Asset file (port format)")->required();
  sampling->add_option("--uef", sampling_flags.uef, "Frontier file to include as a third stream");
  sampling->add_option("--n", sampling_flags.n, "Portfolios per scheme")->capture_default_str()->check(
      CLI::PositiveNumber);
  add_common(sampling, sampling_flags.common);

  std::vector<std::string> args;
  try {
    args = expand_config({argv, argv + argc});
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFile;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitFlags;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*frontier) return cmd_frontier(frontier_flags);
    if (*bench) return cmd_bench(bench_flags);
    if (*tune) return cmd_tune_tabu(tune_flags, tenures);
    if (*sampling) return cmd_compare_sampling(sampling_flags);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFile;
  } catch (const InfeasibleSpecError& e) {
    std::cerr << "error: infeasible problem: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitFlags;
}
