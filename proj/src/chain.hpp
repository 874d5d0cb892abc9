#pragma once

// Internal helpers shared by the single-solution solvers.

#include <span>
#include <vector>

#include "frontier/sampling.hpp"
#include "frontier/solvers.hpp"

namespace frontier::detail {

/// Search state of one lambda value.
struct Chain {
  double lambda = 0.0;
  Portfolio current;
  double current_objective = 0.0;
  Portfolio best;
  double best_objective = 0.0;

  void offer_best(const Portfolio& p, double value) {
    if (value < best_objective) {
      best = p;
      best_objective = value;
    }
  }
};

/// Pool generation plus best-of-pool selection per lambda, charged to the stop condition.
inline std::vector<Chain> start_chains(const ProblemSpec& spec, std::span<const double> lambdas,
                                       std::size_t pool_size, StopCondition& stop, RngStream& rng,
                                       RunStats& stats) {
  if (pool_size < 1) throw std::invalid_argument("starting pool needs at least one portfolio");
  const auto pool = generate_pool(spec, pool_size, rng, stop.budget());
  stats.pool_size = pool.size();
  std::vector<Chain> chains;
  chains.reserve(lambdas.size());
  for (const double lambda : lambdas) {
    const PoolEntry& e = pool[best_in_pool(pool, lambda)];
    const double value = e.objective(lambda);
    chains.push_back({lambda, e.portfolio, value, e.portfolio, value});
  }
  stats.evaluations += pool.size();
  stats.init_seconds = stop.elapsed_seconds();
  return chains;
}

inline SolutionSet collect(const std::vector<Chain>& chains, const ProblemSpec& spec) {
  SolutionSet set;
  set.entries.reserve(chains.size());
  for (const auto& c : chains) {
    set.entries.push_back({c.lambda, c.best, c.best_objective, portfolio_stats(c.best, spec)});
  }
  return set;
}

inline void report(const RunOptions& options, StopCondition& stop, std::size_t lambda_index,
                   std::uint64_t iteration, double best_objective) {
  if (options.on_progress) {
    options.on_progress({lambda_index, iteration, best_objective, stop.elapsed_seconds()});
  }
}

}  // namespace frontier::detail
