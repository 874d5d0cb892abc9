#include <algorithm>
#include <numeric>

#include "chain.hpp"
#include "frontier/solvers.hpp"

namespace frontier {

namespace {

bool worse_first(const GaPopulation::Member& a, const GaPopulation::Member& b) {
  return a.objective < b.objective;
}

}  // namespace

GaPopulation::GaPopulation(std::vector<Member> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("GA population cannot be empty");
  best_ = *std::min_element(members_.begin(), members_.end(), worse_first);
  std::make_heap(members_.begin(), members_.end(), worse_first);
}

void GaPopulation::insert_and_evict(Portfolio child, double objective) {
  if (objective < best_.objective) best_ = {child, objective};
  members_.push_back({std::move(child), objective});
  std::push_heap(members_.begin(), members_.end(), worse_first);
  std::pop_heap(members_.begin(), members_.end(), worse_first);
  members_.pop_back();
}

SolveResult run_ga(const ProblemSpec& spec, std::span<const double> lambdas, const GaProfile& profile,
                   StopCondition stop, RngStream& rng, const RunOptions& options) {
  validate(profile);
  SolveResult result;
  RunStats& stats = result.stats;
  stop.start();
  const auto pool = generate_pool(spec, profile.pool_size, rng, stop.budget());
  stats.pool_size = pool.size();
  stats.evaluations += pool.size();
  const AssetUniverse& universe = spec.universe();

  auto best_of_pool = [&]() {
    SolutionSet set;
    for (const double lambda : lambdas) {
      const PoolEntry& e = pool[best_in_pool(pool, lambda)];
      set.entries.push_back({lambda, e.portfolio, e.objective(lambda), e.stats});
    }
    return set;
  };

  std::vector<GaPopulation> populations;
  populations.reserve(lambdas.size());
  std::vector<std::size_t> order(pool.size());
  const std::size_t pop_size = std::min(profile.population_size, pool.size());
  for (const double lambda : lambdas) {
    if (stop.budget() && stop.budget()->expired()) {
      stats.elapsed_seconds = stop.elapsed_seconds();
      result.solutions = best_of_pool();
      return result;
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pool[a].objective(lambda) < pool[b].objective(lambda);
    });
    std::vector<GaPopulation::Member> members;
    members.reserve(pop_size);
    for (std::size_t r = 0; r < pop_size; ++r) {
      members.push_back({pool[order[r]].portfolio, pool[order[r]].objective(lambda)});
    }
    populations.emplace_back(std::move(members));
  }
  stats.init_seconds = stop.elapsed_seconds();

  // Binary tournament: four draws, without replacement when the population allows it.
  std::size_t picks[4];
  auto draw_four = [&](std::size_t n) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (;;) {
        picks[i] = rng.below(n);
        if (n < 4 || std::find(picks, picks + i, picks[i]) == picks + i) break;
      }
    }
  };

  bool stopped = stop.should_stop(0);
  while (!stopped) {
    for (std::size_t e = 0; e < populations.size(); ++e) {
      if (stop.should_stop(stats.sweeps)) {
        stopped = true;
        break;
      }
      GaPopulation& pop = populations[e];
      draw_four(pop.size());
      const auto& a = pop[picks[0]].objective <= pop[picks[1]].objective ? pop[picks[0]] : pop[picks[1]];
      const auto& b = pop[picks[2]].objective <= pop[picks[3]].objective ? pop[picks[2]] : pop[picks[3]];
      Portfolio child = crossover(a.portfolio, b.portfolio, spec, rng);
      child = mutate(child, spec, rng, profile.p_replace, profile.p_weights).portfolio;
      const double value = objective(child, universe, lambdas[e]);
      ++stats.evaluations;
      pop.insert_and_evict(std::move(child), value);
      detail::report(options, stop, e, stats.sweeps + 1, pop.best().objective);
    }
    if (stopped) break;
    ++stats.sweeps;
    stopped = stop.should_stop(stats.sweeps);
  }

  stats.elapsed_seconds = stop.elapsed_seconds();
  for (std::size_t e = 0; e < populations.size(); ++e) {
    const auto& best = populations[e].best();
    result.solutions.entries.push_back({lambdas[e], best.portfolio, best.objective, portfolio_stats(best.portfolio, spec)});
  }
  return result;
}

}  // namespace frontier
