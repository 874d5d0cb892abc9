#include "frontier/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

namespace frontier {

void apply_overrides(AlgorithmProfile& profile, const ProfileOverrides& o) {
  if (auto* sa = std::get_if<SaProfile>(&profile)) {
    if (o.t_max) sa->t_max = *o.t_max;
    if (o.alpha) sa->alpha = *o.alpha;
    if (o.cooling) sa->cooling = *o.cooling;
  } else if (auto* ts = std::get_if<TsProfile>(&profile)) {
    if (o.subset_size) ts->subset_size = *o.subset_size;
    if (o.tenure) ts->tenure = *o.tenure;
    if (o.tabu_lists) ts->active_lists = *o.tabu_lists;
    if (o.aspiration) ts->aspiration = *o.aspiration;
  } else if (auto* ga = std::get_if<GaProfile>(&profile)) {
    if (o.population_size) ga->population_size = *o.population_size;
    if (o.pool_size) ga->pool_size = *o.pool_size;
    if (o.p_replace) ga->p_replace = *o.p_replace;
    if (o.p_weights) ga->p_weights = *o.p_weights;
  }
}

AlgorithmProfile resolve_profile(const RunRequest& request) {
  const double tabulated = request.profile_budget ? *request.profile_budget
                           : request.sweep_cap    ? 5.0
                                                  : request.budget_seconds;
  AlgorithmProfile profile = profile_for_budget(request.algorithm, tabulated > 0.0 ? tabulated : 1.0);
  apply_overrides(profile, request.overrides);
  std::visit([](const auto& p) { validate(p); }, profile);
  return profile;
}

RunOutcome execute_run(const ProblemSpec& spec, const RunRequest& request, const Uef* uef,
                       ErrorMethod method, bool filter_dominated) {
  RunOutcome out;
  out.profile = resolve_profile(request);
  out.timed = !request.sweep_cap.has_value();
  const auto lambdas = lambda_grid(spec.lambda_count());
  StopCondition stop = request.sweep_cap ? StopCondition::sweeps(*request.sweep_cap)
                                         : StopCondition::wall_clock(request.budget_seconds);
  RngStream rng(request.seed);
  RunOptions options;
  options.pool_size = request.overrides.pool_size.value_or(request.pool_size);
  options.on_progress = request.on_progress;
  out.result = solve(spec, lambdas, out.profile, stop, rng, options);
  if (uef) out.errors = evaluate_solution(out.result.solutions, *uef, method, filter_dominated);
  return out;
}

std::size_t repetitions_for(const ExperimentPlan& plan, std::size_t budget_index) {
  return plan.repetitions.size() == 1 ? plan.repetitions.front() : plan.repetitions.at(budget_index);
}

void validate(const ExperimentPlan& plan) {
  if (plan.datasets.empty()) throw std::invalid_argument("experiment plan lists no datasets");
  if (plan.algorithms.empty()) throw std::invalid_argument("experiment plan lists no algorithms");
  if (plan.budgets.empty()) throw std::invalid_argument("experiment plan lists no budgets");
  for (const double b : plan.budgets) {
    if (!(b > 0.0)) throw std::invalid_argument("budgets must be positive");
  }
  if (plan.repetitions.size() != 1 && plan.repetitions.size() != plan.budgets.size()) {
    throw std::invalid_argument("give one repetition count, or one per budget");
  }
  for (const auto r : plan.repetitions) {
    if (r < 1) throw std::invalid_argument("repetitions must be at least 1");
  }
  if (plan.workers < 1) throw std::invalid_argument("worker count must be at least 1");
}

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& dataset, Algorithm algorithm,
                          double budget_seconds, std::size_t repetition) {
  char num[64];
  auto [end, ec] = std::to_chars(num, num + sizeof(num), budget_seconds);
  const std::string key = dataset + "|" + std::string(to_string(algorithm)) + "|" + std::string(num, end);
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return (base_seed ^ h) + repetition;
}

HostInfo host_info() {
  HostInfo info;
  info.logical_cores = std::thread::hardware_concurrency();
  std::ifstream cpu("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpu, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        info.cpu_model = line.substr(line.find_first_not_of(' ', colon + 1));
        break;
      }
    }
  }
  if (info.cpu_model.empty()) info.cpu_model = "unknown";
  return info;
}

std::size_t workers_from_env() {
  const char* raw = std::getenv("FRONTIER_RACE_THREADS");
  if (!raw || !*raw) return 1;
  std::size_t value = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value < 1) return 1;
  return value;
}

std::string dataset_name(const std::filesystem::path& assets) { return assets.stem().string(); }

namespace {

struct LoadedDataset {
  std::optional<ProblemSpec> spec;
  std::optional<Uef> uef;
};

std::vector<LoadedDataset> load_all(const ExperimentPlan& plan, std::vector<DatasetFailure>& failures) {
  std::vector<LoadedDataset> loaded(plan.datasets.size());
  for (std::size_t d = 0; d < plan.datasets.size(); ++d) {
    const DatasetRef& ref = plan.datasets[d];
    try {
      auto universe = std::make_shared<const AssetUniverse>(load_universe_file(ref.assets));
      loaded[d].uef.emplace(load_uef_file(ref.frontier));
      loaded[d].spec.emplace(std::move(universe), plan.k, plan.min_weight, plan.lambda_count);
    } catch (const std::exception& e) {
      loaded[d] = {};
      failures.push_back({ref.name, e.what()});
    }
  }
  return loaded;
}

struct Job {
  std::size_t dataset = 0;
  RunRequest request;
  double* mpe = nullptr;
  double* wall = nullptr;
};

/// Executes jobs on `workers` threads; each job writes only its own output slots.
void run_jobs(std::vector<Job>& jobs, const std::vector<LoadedDataset>& loaded, const ExperimentPlan& plan) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      Job& job = jobs[i];
      try {
        const auto& ds = loaded[job.dataset];
        const auto started = Clock::now();
        const RunOutcome out = execute_run(*ds.spec, job.request, &*ds.uef, plan.method, plan.filter_dominated);
        *job.wall = std::chrono::duration<double>(Clock::now() - started).count();
        *job.mpe = out.errors->mpe;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
      }
    }
  };
  const std::size_t threads = std::min(plan.workers, std::max<std::size_t>(jobs.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (const double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

RunRequest base_request(const ExperimentPlan& plan, Algorithm algorithm, double budget) {
  RunRequest req;
  req.algorithm = algorithm;
  req.budget_seconds = budget;
  req.sweep_cap = plan.sweep_cap;
  req.profile_budget = budget;
  req.overrides = plan.overrides;
  return req;
}

}  // namespace

AggregateReport run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  AggregateReport report;
  report.budgets = plan.budgets;
  report.method = plan.method;
  report.dominance_filtered = plan.filter_dominated;
  report.timed = !plan.sweep_cap.has_value();
  report.host = host_info();
  const auto loaded = load_all(plan, report.failures);

  for (std::size_t d = 0; d < plan.datasets.size(); ++d) {
    if (!loaded[d].spec) continue;
    for (const Algorithm a : plan.algorithms) {
      for (std::size_t b = 0; b < plan.budgets.size(); ++b) {
        CellResult cell;
        cell.dataset = plan.datasets[d].name;
        cell.algorithm = a;
        cell.budget_seconds = plan.budgets[b];
        const std::size_t reps = repetitions_for(plan, b);
        cell.mpes.assign(reps, 0.0);
        cell.wall_seconds.assign(reps, 0.0);
        for (std::size_t r = 0; r < reps; ++r) {
          cell.seeds.push_back(derive_seed(plan.base_seed, cell.dataset, a, cell.budget_seconds, r));
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }

  std::vector<Job> jobs;
  {
    std::size_t c = 0;
    for (std::size_t d = 0; d < plan.datasets.size(); ++d) {
      if (!loaded[d].spec) continue;
      for (std::size_t a = 0; a < plan.algorithms.size(); ++a) {
        for (std::size_t b = 0; b < plan.budgets.size(); ++b, ++c) {
          CellResult& cell = report.cells[c];
          for (std::size_t r = 0; r < cell.mpes.size(); ++r) {
            Job job{d, base_request(plan, cell.algorithm, cell.budget_seconds), &cell.mpes[r], &cell.wall_seconds[r]};
            job.request.seed = cell.seeds[r];
            jobs.push_back(std::move(job));
          }
        }
      }
    }
  }
  run_jobs(jobs, loaded, plan);

  for (auto& cell : report.cells) {
    cell.mpe_mean = mean_of(cell.mpes);
    cell.mpe_std = sample_std(cell.mpes);
  }

  for (const Algorithm a : plan.algorithms) {
    for (const double budget : plan.budgets) {
      std::vector<double> means;
      for (const auto& cell : report.cells) {
        if (cell.algorithm == a && cell.budget_seconds == budget) means.push_back(cell.mpe_mean);
      }
      if (means.empty()) continue;
      report.averages.push_back({a, budget, means.size(), mean_of(means), sample_std(means)});
    }
  }

  std::vector<double> ascending = plan.budgets;
  std::sort(ascending.begin(), ascending.end());
  ascending.erase(std::unique(ascending.begin(), ascending.end()), ascending.end());
  auto find_cell = [&](const std::string& ds, Algorithm a, double budget) -> const CellResult* {
    for (const auto& cell : report.cells) {
      if (cell.dataset == ds && cell.algorithm == a && cell.budget_seconds == budget) return &cell;
    }
    return nullptr;
  };
  for (std::size_t d = 0; d < plan.datasets.size(); ++d) {
    if (!loaded[d].spec) continue;
    for (const Algorithm a : plan.algorithms) {
      for (std::size_t b = 0; b + 1 < ascending.size(); ++b) {
        const CellResult* earlier = find_cell(plan.datasets[d].name, a, ascending[b]);
        const CellResult* later = find_cell(plan.datasets[d].name, a, ascending[b + 1]);
        if (!earlier || !later || !(earlier->mpe_mean > 0.0)) continue;
        report.improvements.push_back({earlier->dataset, a, ascending[b], ascending[b + 1], earlier->mpe_mean,
                                       later->mpe_mean, improvement(earlier->mpe_mean, later->mpe_mean)});
      }
    }
  }
  return report;
}

std::vector<unsigned> tabu_list_combinations() {
  // Row order: no list, single lists, pairs, triples, all four.
  return {0u,
          kWeightDownList,
          kWeightUpList,
          kAssetOutList,
          kAssetInList,
          kWeightUpList | kWeightDownList,
          kAssetOutList | kWeightDownList,
          kAssetInList | kWeightDownList,
          kAssetOutList | kWeightUpList,
          kAssetInList | kWeightUpList,
          kAssetInList | kAssetOutList,
          kAssetOutList | kWeightUpList | kWeightDownList,
          kAssetInList | kWeightUpList | kWeightDownList,
          kAssetInList | kAssetOutList | kWeightDownList,
          kAssetInList | kAssetOutList | kWeightUpList,
          kAssetInList | kAssetOutList | kWeightUpList | kWeightDownList};
}

TabuTuningReport tabu_tuning_grid(const ExperimentPlan& plan, std::span<const std::size_t> tenures,
                                  std::span<const unsigned> combinations) {
  validate(plan);
  TabuTuningReport report;
  report.budgets = plan.budgets;
  report.timed = !plan.sweep_cap.has_value();
  report.host = host_info();
  std::vector<DatasetFailure> failures;
  const auto loaded = load_all(plan, failures);
  if (!failures.empty()) throw DatasetError(failures.front().dataset + ": " + failures.front().message);

  // results[row][budget] holds one MPE per (dataset, repetition).
  std::vector<std::vector<std::vector<double>>> results;
  std::vector<std::vector<std::vector<double>>> walls;
  for (const std::size_t tenure : tenures) {
    for (const unsigned lists : combinations) {
      report.rows.push_back({lists, tenure, {}, 0.0});
      std::vector<std::vector<double>> per_budget;
      for (std::size_t b = 0; b < plan.budgets.size(); ++b) {
        per_budget.emplace_back(plan.datasets.size() * repetitions_for(plan, b), 0.0);
      }
      walls.push_back(per_budget);
      results.push_back(std::move(per_budget));
    }
  }

  std::vector<Job> jobs;
  for (std::size_t row = 0; row < report.rows.size(); ++row) {
    for (std::size_t b = 0; b < plan.budgets.size(); ++b) {
      const std::size_t reps = repetitions_for(plan, b);
      for (std::size_t d = 0; d < plan.datasets.size(); ++d) {
        for (std::size_t r = 0; r < reps; ++r) {
          RunRequest req = base_request(plan, Algorithm::TabuSearch, plan.budgets[b]);
          req.overrides.tenure = report.rows[row].tenure;
          req.overrides.tabu_lists = report.rows[row].lists;
          req.seed = derive_seed(plan.base_seed, plan.datasets[d].name, Algorithm::TabuSearch, plan.budgets[b], r);
          jobs.push_back({d, std::move(req), &results[row][b][d * reps + r], &walls[row][b][d * reps + r]});
        }
      }
    }
  }
  run_jobs(jobs, loaded, plan);

  for (std::size_t row = 0; row < report.rows.size(); ++row) {
    for (const auto& column : results[row]) report.rows[row].mpe_per_budget.push_back(mean_of(column));
    report.rows[row].average = mean_of(report.rows[row].mpe_per_budget);
  }
  return report;
}

FrontierTrace frontier_trace(const DatasetRef& dataset, const ProblemSpec& spec, const Uef& uef,
                             const RunRequest& request, ErrorMethod method) {
  FrontierTrace trace;
  trace.dataset = dataset.name;
  trace.algorithm = request.algorithm;
  trace.outcome = execute_run(spec, request, &uef, method, false);
  for (const auto& e : trace.outcome.result.solutions.entries) {
    trace.solutions.push_back({e.lambda, e.stats.std_dev, e.stats.mean_return});
  }
  trace.frontier.reserve(uef.size());
  for (const auto& p : uef.points()) trace.frontier.push_back({p.std_dev, p.mean_return});
  return trace;
}

}  // namespace frontier
