#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/evaluation.hpp"
#include "frontier/sampling.hpp"
#include "frontier/solvers.hpp"

namespace frontier {

/// Optional per-field replacements applied on top of the budget's tuned profile.
struct ProfileOverrides {
  std::optional<double> t_max;
  std::optional<double> alpha;
  std::optional<Cooling> cooling;
  std::optional<std::size_t> subset_size;
  std::optional<std::size_t> tenure;
  std::optional<unsigned> tabu_lists;
  std::optional<bool> aspiration;
  std::optional<std::size_t> population_size;
  std::optional<std::size_t> pool_size;
  std::optional<double> p_replace;
  std::optional<double> p_weights;
};

void apply_overrides(AlgorithmProfile& profile, const ProfileOverrides& overrides);

/// Everything needed to reproduce one solver run.
struct RunRequest {
  Algorithm algorithm = Algorithm::SimulatedAnnealing;
  /// Wall-clock seconds; ignored when sweep_cap is set.
  double budget_seconds = 5.0;
  std::optional<std::uint64_t> sweep_cap;
  /// Budget whose tuned profile is used; defaults to budget_seconds (5 s when sweep-capped).
  std::optional<double> profile_budget;
  std::uint64_t seed = 1;
  std::size_t pool_size = 1000;
  ProfileOverrides overrides;
  ProgressCallback on_progress;
};

struct RunOutcome {
  AlgorithmProfile profile;
  SolveResult result;
  std::optional<ErrorReport> errors;
  bool timed = true;  ///< false for sweep-capped runs, whose timing is not reproducible
};

AlgorithmProfile resolve_profile(const RunRequest& request);

RunOutcome execute_run(const ProblemSpec& spec, const RunRequest& request, const Uef* uef = nullptr,
                       ErrorMethod method = ErrorMethod::Combined, bool filter_dominated = false);

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct DatasetRef {
  std::string name;
  std::filesystem::path assets;
  std::filesystem::path frontier;
};

struct ExperimentPlan {
  std::vector<DatasetRef> datasets;
  std::vector<Algorithm> algorithms{Algorithm::SimulatedAnnealing, Algorithm::TabuSearch,
                                    Algorithm::GeneticAlgorithm};
  std::vector<double> budgets{1.0, 5.0, 25.0};
  /// One count per budget, or a single count applied to every budget.
  std::vector<std::size_t> repetitions{1};
  std::uint64_t base_seed = 1;
  ErrorMethod method = ErrorMethod::Combined;
  bool filter_dominated = false;
  std::size_t lambda_count = 50;
  std::size_t k = 10;
  double min_weight = 0.01;
  /// When set, every run stops after this many sweeps instead of its budget; budgets still
  /// select the tuned profiles and label the cells.
  std::optional<std::uint64_t> sweep_cap;
  std::size_t workers = 1;
  ProfileOverrides overrides;
};

void validate(const ExperimentPlan& plan);
std::size_t repetitions_for(const ExperimentPlan& plan, std::size_t budget_index);

/// seed = (base_seed XOR fnv1a64("dataset|algorithm|budget")) + repetition.
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& dataset, Algorithm algorithm,
                          double budget_seconds, std::size_t repetition);

struct HostInfo {
  std::string cpu_model;
  unsigned logical_cores = 0;
};

HostInfo host_info();

/// FRONTIER_RACE_THREADS, or 1 when unset or unparsable.
std::size_t workers_from_env();

struct CellResult {
  std::string dataset;
  Algorithm algorithm = Algorithm::SimulatedAnnealing;
  double budget_seconds = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> mpes;
  std::vector<double> wall_seconds;
  double mpe_mean = 0.0;
  double mpe_std = 0.0;  ///< sample standard deviation; 0 for one repetition
};

struct AverageCell {
  Algorithm algorithm = Algorithm::SimulatedAnnealing;
  double budget_seconds = 0.0;
  std::size_t datasets = 0;
  double mpe_mean = 0.0;
  double mpe_std = 0.0;  ///< across the dataset means
};

struct ImprovementCell {
  std::string dataset;
  Algorithm algorithm = Algorithm::SimulatedAnnealing;
  double from_budget = 0.0;
  double to_budget = 0.0;
  double earlier_mpe = 0.0;
  double later_mpe = 0.0;
  double improvement = 0.0;
};

struct DatasetFailure {
  std::string dataset;
  std::string message;
};

struct AggregateReport {
  std::vector<CellResult> cells;  ///< dataset-major, then algorithm, then budget (plan order)
  std::vector<AverageCell> averages;
  std::vector<ImprovementCell> improvements;
  std::vector<DatasetFailure> failures;
  std::vector<double> budgets;
  ErrorMethod method = ErrorMethod::Combined;
  bool dominance_filtered = false;
  bool timed = true;
  HostInfo host;
};

AggregateReport run_experiment(const ExperimentPlan& plan);

/// The 16 on/off combinations of the four tabu lists, none first and all last.
std::vector<unsigned> tabu_list_combinations();

struct TabuTuningRow {
  unsigned lists = 0;
  std::size_t tenure = 3;
  std::vector<double> mpe_per_budget;
  double average = 0.0;
};

struct TabuTuningReport {
  std::vector<double> budgets;
  std::vector<TabuTuningRow> rows;
  bool timed = true;
  HostInfo host;
};

/// Runs TS for every list combination and tenure over the plan's datasets, budgets and
/// repetitions. Each budget column is the mean MPE over datasets and repetitions.
TabuTuningReport tabu_tuning_grid(const ExperimentPlan& plan, std::span<const std::size_t> tenures,
                                  std::span<const unsigned> combinations);

struct TracePoint {
  double lambda = 0.0;
  double std_dev = 0.0;
  double mean_return = 0.0;
};

struct FrontierTrace {
  std::string dataset;
  Algorithm algorithm = Algorithm::SimulatedAnnealing;
  std::vector<TracePoint> solutions;
  std::vector<FrontierPoint> frontier;
  RunOutcome outcome;
};

FrontierTrace frontier_trace(const DatasetRef& dataset, const ProblemSpec& spec, const Uef& uef,
                             const RunRequest& request, ErrorMethod method = ErrorMethod::Combined);

/// Stem of the asset file, e.g. "port1" for data/port1.txt.
std::string dataset_name(const std::filesystem::path& assets);

}  // namespace frontier
