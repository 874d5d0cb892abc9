#include <cmath>

#include "chain.hpp"
#include "frontier/solvers.hpp"

namespace frontier {

bool sa_accept(double delta, double t, RngStream& rng) {
  if (delta <= 0.0) return true;
  if (!(t > 0.0)) return false;
  return rng.uniform01() < std::exp(-delta / t);
}

SolveResult run_sa(const ProblemSpec& spec, std::span<const double> lambdas, const SaProfile& profile,
                   StopCondition stop, RngStream& rng, const RunOptions& options) {
  validate(profile);
  SolveResult result;
  RunStats& stats = result.stats;
  stop.start();
  auto chains = detail::start_chains(spec, lambdas, options.pool_size, stop, rng, stats);
  const AssetUniverse& universe = spec.universe();

  double t = profile.t_max;
  bool replace = true;
  Portfolio candidate;
  bool stopped = stop.should_stop(0);
  while (!stopped) {
    for (std::size_t e = 0; e < chains.size(); ++e) {
      if (stop.should_stop(stats.sweeps)) {
        stopped = true;
        break;
      }
      detail::Chain& c = chains[e];
      const auto move = replace ? propose_replacement(c.current, spec, rng)
                                : propose_weight_change(c.current, spec, rng);
      if (move) {
        candidate = c.current;
        apply_move(candidate, *move);
        const double value = objective(candidate, universe, c.lambda);
        ++stats.evaluations;
        const double delta = value - c.current_objective;
        if (delta > 0.0) ++stats.worsening_proposed;
        if (sa_accept(delta, t, rng)) {
          if (delta > 0.0) ++stats.worsening_accepted;
          std::swap(c.current, candidate);
          c.current_objective = value;
          c.offer_best(c.current, value);
        }
      }
      if (profile.cooling == Cooling::PerStep) t *= profile.alpha;
      detail::report(options, stop, e, stats.sweeps + 1, c.best_objective);
    }
    if (stopped) break;
    ++stats.sweeps;
    if (profile.cooling == Cooling::PerSweep) t *= profile.alpha;
    replace = !replace;
    stopped = stop.should_stop(stats.sweeps);
  }

  stats.final_temperature = t;
  stats.elapsed_seconds = stop.elapsed_seconds();
  result.solutions = detail::collect(chains, spec);
  return result;
}

}  // namespace frontier
