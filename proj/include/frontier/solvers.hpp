#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "frontier/budget.hpp"
#include "frontier/model.hpp"
#include "frontier/neighborhood.hpp"
#include "frontier/rng.hpp"

namespace frontier {

enum class Algorithm { SimulatedAnnealing, TabuSearch, GeneticAlgorithm };

std::string_view to_string(Algorithm a);
/// Accepts "sa", "ts", "ga" (case-insensitive).
std::optional<Algorithm> parse_algorithm(std::string_view text);

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

enum class Cooling { PerSweep, PerStep };

struct SaProfile {
  double t_max = 0.00005;
  double alpha = 0.95;
  Cooling cooling = Cooling::PerSweep;
};

/// Bit flags selecting which attribute lists are active.
enum TabuListFlag : unsigned {
  kAssetInList = 1u << 0,
  kAssetOutList = 1u << 1,
  kWeightUpList = 1u << 2,
  kWeightDownList = 1u << 3,
};

struct TsProfile {
  std::size_t subset_size = 50;
  std::size_t tenure = 3;
  unsigned active_lists = kWeightDownList;
  /// Admit a tabu candidate that beats the chain's best objective. Off by default.
  bool aspiration = false;
};

struct GaProfile {
  std::size_t population_size = 50;
  std::size_t pool_size = 1000;
  double p_replace = 0.1;
  double p_weights = 0.1;
};

using AlgorithmProfile = std::variant<SaProfile, TsProfile, GaProfile>;

void validate(const SaProfile& p);
void validate(const TsProfile& p);
void validate(const GaProfile& p);

/// Tuned settings for 1, 5 and 25 second runs over a 50-portfolio set. Other budgets use the
/// nearest tabulated budget on a log scale (ties go to the shorter budget).
SaProfile sa_profile_for_budget(double total_seconds);
TsProfile ts_profile_for_budget(double total_seconds);
GaProfile ga_profile_for_budget(double total_seconds);
AlgorithmProfile profile_for_budget(Algorithm algorithm, double total_seconds);

/// The tabulated budget (1, 5 or 25) a given budget maps to.
double nearest_tabulated_budget(double total_seconds);

// ---------------------------------------------------------------------------
// Results and hooks
// ---------------------------------------------------------------------------

struct SolutionEntry {
  double lambda = 0.0;
  Portfolio portfolio;
  double objective = 0.0;
  PortfolioStats stats;
};

/// One best-so-far portfolio per lambda, in grid order.
struct SolutionSet {
  std::vector<SolutionEntry> entries;
};

struct RunStats {
  std::uint64_t sweeps = 0;
  std::uint64_t evaluations = 0;
  std::size_t pool_size = 0;
  double init_seconds = 0.0;
  double elapsed_seconds = 0.0;
  // SA acceptance gauge: worsening candidates proposed / accepted.
  std::uint64_t worsening_proposed = 0;
  std::uint64_t worsening_accepted = 0;
  double final_temperature = 0.0;

  double acceptance_rate() const {
    return worsening_proposed ? static_cast<double>(worsening_accepted) / static_cast<double>(worsening_proposed)
                              : 0.0;
  }
};

struct SolveResult {
  SolutionSet solutions;
  RunStats stats;
};

struct ProgressEvent {
  std::size_t lambda_index = 0;
  std::uint64_t iteration = 0;
  double best_objective = 0.0;
  double elapsed_seconds = 0.0;
};

using ProgressCallback = std::function<void(const ProgressEvent&)>;

struct RunOptions {
  /// Random pool used for starting portfolios (SA, TS). GA uses GaProfile::pool_size.
  std::size_t pool_size = 1000;
  /// Called after every single-lambda step with that lambda's best-so-far objective.
  ProgressCallback on_progress;
};

// ---------------------------------------------------------------------------
// Simulated annealing
// ---------------------------------------------------------------------------

/// Metropolis rule: improvements always, degradations with probability exp(-delta / t).
/// t <= 0 accepts improvements only. Draws from rng only when delta > 0.
bool sa_accept(double delta, double t, RngStream& rng);

SolveResult run_sa(const ProblemSpec& spec, std::span<const double> lambdas, const SaProfile& profile,
                   StopCondition stop, RngStream& rng, const RunOptions& options = {});

// ---------------------------------------------------------------------------
// Tabu search
// ---------------------------------------------------------------------------

/// The four attribute FIFOs of one lambda chain, each holding at most `tenure` assets.
class TabuLists {
 public:
  TabuLists(std::size_t tenure, unsigned active_lists) : tenure_(tenure), active_(active_lists) {}

  /// Pushes the move's tags onto the matching active lists, evicting the oldest beyond tenure.
  void record(const Move& move);
  bool contains(Attribute list, std::size_t asset) const;
  const std::deque<std::size_t>& list(Attribute a) const { return lists_[static_cast<int>(a)]; }
  unsigned active() const { return active_; }
  std::size_t tenure() const { return tenure_; }

 private:
  std::size_t tenure_;
  unsigned active_;
  std::deque<std::size_t> lists_[4];
};

/// Inadmissible iff an active list forbids it: asset-in forbids removing, asset-out forbids
/// re-adding, weight-down forbids increasing, weight-up forbids decreasing.
bool tabu_admissible(const Move& move, const TabuLists& lists);

SolveResult run_ts(const ProblemSpec& spec, std::span<const double> lambdas, const TsProfile& profile,
                   StopCondition stop, RngStream& rng, const RunOptions& options = {});

// ---------------------------------------------------------------------------
// Genetic algorithm
// ---------------------------------------------------------------------------

/// Fixed-size population ordered as a max-heap on objective, so the worst member sits at the
/// front and insert-then-evict costs O(log n). The best member is tracked separately.
class GaPopulation {
 public:
  struct Member {
    Portfolio portfolio;
    double objective = 0.0;
  };

  explicit GaPopulation(std::vector<Member> members);

  std::size_t size() const { return members_.size(); }
  const Member& operator[](std::size_t i) const { return members_[i]; }
  const Member& worst() const { return members_.front(); }
  const Member& best() const { return best_; }

  /// Adds the child, then removes the current worst (possibly the child itself).
  void insert_and_evict(Portfolio child, double objective);

 private:
  std::vector<Member> members_;
  Member best_;
};

SolveResult run_ga(const ProblemSpec& spec, std::span<const double> lambdas, const GaProfile& profile,
                   StopCondition stop, RngStream& rng, const RunOptions& options = {});

/// Dispatch on the profile's alternative.
SolveResult solve(const ProblemSpec& spec, std::span<const double> lambdas, const AlgorithmProfile& profile,
                  StopCondition stop, RngStream& rng, const RunOptions& options = {});

Algorithm algorithm_of(const AlgorithmProfile& profile);

}  // namespace frontier
