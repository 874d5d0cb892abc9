#include "frontier/sampling.hpp"

#include <algorithm>
#include <cassert>

#include "frontier/budget.hpp"

namespace frontier {

std::vector<std::size_t> draw_assets(const ProblemSpec& spec, RngStream& rng) {
  const std::size_t n = spec.asset_count();
  const std::size_t k = spec.k();
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  if (2 * k > n) {
    // Dense case: partial Fisher-Yates keeps the draw order uniform without long rejection runs.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + rng.below(n - i)]);
      chosen.push_back(idx[i]);
    }
    return chosen;
  }
  while (chosen.size() < k) {
    const std::size_t a = rng.below(n);
    if (std::find(chosen.begin(), chosen.end(), a) == chosen.end()) chosen.push_back(a);
  }
  return chosen;
}

Portfolio random_portfolio_sequential(const ProblemSpec& spec, RngStream& rng) {
  const std::size_t k = spec.k();
  const double l = spec.min_weight();
  const auto assets = draw_assets(spec, rng);
  std::vector<Holding> holdings;
  holdings.reserve(k);
  double remaining = 1.0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const double left_after = static_cast<double>(k - j - 1) * l;
    const double w = rng.uniform(l, remaining - left_after);
    holdings.push_back({assets[j], w});
    remaining -= w;
    assert(remaining >= left_after - 1e-12);
  }
  holdings.push_back({assets[k - 1], remaining});
  return Portfolio(std::move(holdings));
}

Portfolio random_portfolio_independent(const ProblemSpec& spec, RngStream& rng) {
  const std::size_t k = spec.k();
  const double l = spec.min_weight();
  const double free_mass = std::max(0.0, 1.0 - static_cast<double>(k) * l);
  const auto assets = draw_assets(spec, rng);
  std::vector<double> u(k);
  double total = 0.0;
  do {
    total = 0.0;
    for (auto& x : u) {
      x = 1.0 - rng.uniform01();
      total += x;
    }
  } while (total <= 0.0);

  std::vector<Holding> holdings;
  holdings.reserve(k);
  for (std::size_t i = 0; i < k; ++i) holdings.push_back({assets[i], l + u[i] * free_mass / total});
  return Portfolio(std::move(holdings));
}

Portfolio random_portfolio(const ProblemSpec& spec, RngStream& rng, WeightScheme scheme) {
  return scheme == WeightScheme::Sequential ? random_portfolio_sequential(spec, rng)
                                            : random_portfolio_independent(spec, rng);
}

std::vector<PoolEntry> generate_pool(const ProblemSpec& spec, std::size_t pool_size, RngStream& rng,
                                     Budget* budget) {
  std::vector<PoolEntry> pool;
  pool.reserve(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) {
    if (budget && !pool.empty() && (i % 32 == 0) && budget->expired()) break;
    Portfolio p = random_portfolio_sequential(spec, rng);
    const PortfolioStats stats = portfolio_stats(p, spec);
    pool.push_back({std::move(p), stats});
  }
  if (pool.empty()) {
    Portfolio p = random_portfolio_sequential(spec, rng);
    const PortfolioStats stats = portfolio_stats(p, spec);
    pool.push_back({std::move(p), stats});
  }
  return pool;
}

std::size_t best_in_pool(std::span<const PoolEntry> pool, double lambda) {
  std::size_t best = 0;
  double best_value = pool[0].objective(lambda);
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double v = pool[i].objective(lambda);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

std::vector<Portfolio> find_starting_portfolios(const ProblemSpec& spec, std::span<const double> lambdas,
                                                std::size_t pool_size, RngStream& rng) {
  if (pool_size < 1) throw std::invalid_argument("starting pool needs at least one portfolio");
  const auto pool = generate_pool(spec, pool_size, rng);
  std::vector<Portfolio> starts;
  starts.reserve(lambdas.size());
  for (const double lambda : lambdas) starts.push_back(pool[best_in_pool(pool, lambda)].portfolio);
  return starts;
}

SamplingComparison sampling_comparison(const ProblemSpec& spec, std::size_t pool_size, RngStream& rng) {
  SamplingComparison out;
  auto fill = [&](std::vector<ScatterRecord>& dst, WeightScheme scheme) {
    dst.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
      Portfolio p = random_portfolio(spec, rng, scheme);
      const PortfolioStats s = portfolio_stats(p, spec);
      dst.push_back({s.std_dev, s.mean_return, std::move(p)});
    }
  };
  fill(out.sequential, WeightScheme::Sequential);
  fill(out.independent, WeightScheme::Independent);
  return out;
}

}  // namespace frontier
