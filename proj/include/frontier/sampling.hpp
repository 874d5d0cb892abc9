#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frontier/model.hpp"
#include "frontier/rng.hpp"

namespace frontier {

class Budget;

enum class WeightScheme { Sequential, Independent };

/// K distinct assets uniformly without replacement, in draw order.
std::vector<std::size_t> draw_assets(const ProblemSpec& spec, RngStream& rng);

/// Weights assigned one after another in draw order; weight j is uniform on
/// [l, remaining - (K - j) l] and the last asset takes the exact remainder.
Portfolio random_portfolio_sequential(const ProblemSpec& spec, RngStream& rng);

/// K draws u_i in (0, 1]; w_i = l + u_i (1 - K l) / sum(u).
Portfolio random_portfolio_independent(const ProblemSpec& spec, RngStream& rng);

Portfolio random_portfolio(const ProblemSpec& spec, RngStream& rng, WeightScheme scheme);

/// Pool member with its cached mean/variance so per-lambda ranking costs O(1) per member.
struct PoolEntry {
  Portfolio portfolio;
  PortfolioStats stats;

  double objective(double lambda) const {
    return lambda * stats.variance - (1.0 - lambda) * stats.mean_return;
  }
};

/// Generates up to pool_size sequential-scheme portfolios. With a budget, generation stops
/// early once it expires, but always yields at least one member.
std::vector<PoolEntry> generate_pool(const ProblemSpec& spec, std::size_t pool_size, RngStream& rng,
                                     Budget* budget = nullptr);

/// Index of the pool member minimising the objective at lambda (lowest index on ties).
std::size_t best_in_pool(std::span<const PoolEntry> pool, double lambda);

/// One starting portfolio per lambda, all drawn from one shared random pool.
std::vector<Portfolio> find_starting_portfolios(const ProblemSpec& spec, std::span<const double> lambdas,
                                                std::size_t pool_size, RngStream& rng);

struct ScatterRecord {
  double std_dev = 0.0;
  double mean_return = 0.0;
  Portfolio portfolio;
};

struct SamplingComparison {
  std::vector<ScatterRecord> sequential;
  std::vector<ScatterRecord> independent;
};

/// pool_size portfolios per weight scheme, for plotting against the frontier.
SamplingComparison sampling_comparison(const ProblemSpec& spec, std::size_t pool_size, RngStream& rng);

}  // namespace frontier
