#include <algorithm>
#include <limits>

#include "chain.hpp"
#include "frontier/solvers.hpp"

namespace frontier {

namespace {

unsigned flag_of(Attribute a) {
  switch (a) {
    case Attribute::AssetIn: return kAssetInList;
    case Attribute::AssetOut: return kAssetOutList;
    case Attribute::WeightUp: return kWeightUpList;
    case Attribute::WeightDown: return kWeightDownList;
  }
  return 0;
}

}  // namespace

void TabuLists::record(const Move& move) {
  for (const AttributeTag& tag : move.tags()) {
    if (!(active_ & flag_of(tag.attribute))) continue;
    auto& fifo = lists_[static_cast<int>(tag.attribute)];
    fifo.push_back(tag.asset);
    while (fifo.size() > tenure_) fifo.pop_front();
  }
}

bool TabuLists::contains(Attribute list, std::size_t asset) const {
  if (!(active_ & flag_of(list))) return false;
  const auto& fifo = lists_[static_cast<int>(list)];
  return std::find(fifo.begin(), fifo.end(), asset) != fifo.end();
}

bool tabu_admissible(const Move& move, const TabuLists& lists) {
  if (move.kind == MoveKind::AssetReplacement) {
    return !lists.contains(Attribute::AssetIn, move.out) && !lists.contains(Attribute::AssetOut, move.in);
  }
  return !lists.contains(Attribute::WeightDown, move.to) && !lists.contains(Attribute::WeightUp, move.from);
}

SolveResult run_ts(const ProblemSpec& spec, std::span<const double> lambdas, const TsProfile& profile,
                   StopCondition stop, RngStream& rng, const RunOptions& options) {
  validate(profile);
  SolveResult result;
  RunStats& stats = result.stats;
  stop.start();
  auto chains = detail::start_chains(spec, lambdas, options.pool_size, stop, rng, stats);
  std::vector<TabuLists> memory(chains.size(), TabuLists(profile.tenure, profile.active_lists));
  const AssetUniverse& universe = spec.universe();

  Portfolio scratch;
  // Fills one candidate subset and returns the best admissible move, if any.
  auto best_of_subset = [&](detail::Chain& c, const TabuLists& lists, bool replace, Move& chosen,
                            double& chosen_value) {
    bool found = false;
    for (std::size_t s = 0; s < profile.subset_size; ++s) {
      const auto move = replace ? propose_replacement(c.current, spec, rng)
                                : propose_weight_change(c.current, spec, rng);
      if (!move) break;
      const bool admissible = tabu_admissible(*move, lists);
      if (!admissible && !profile.aspiration) continue;
      scratch = c.current;
      apply_move(scratch, *move);
      const double value = objective(scratch, universe, c.lambda);
      ++stats.evaluations;
      if (!admissible && !(value < c.best_objective)) continue;
      if (!found || value < chosen_value) {
        found = true;
        chosen = *move;
        chosen_value = value;
      }
    }
    return found;
  };

  bool replace = true;
  bool stopped = stop.should_stop(0);
  while (!stopped) {
    for (std::size_t e = 0; e < chains.size(); ++e) {
      if (stop.should_stop(stats.sweeps)) {
        stopped = true;
        break;
      }
      detail::Chain& c = chains[e];
      Move chosen;
      double value = std::numeric_limits<double>::infinity();
      if (best_of_subset(c, memory[e], replace, chosen, value) ||
          best_of_subset(c, memory[e], replace, chosen, value)) {
        apply_move(c.current, chosen);
        c.current_objective = value;
        memory[e].record(chosen);
        c.offer_best(c.current, value);
      }
      detail::report(options, stop, e, stats.sweeps + 1, c.best_objective);
    }
    if (stopped) break;
    ++stats.sweeps;
    replace = !replace;
    stopped = stop.should_stop(stats.sweeps);
  }

  stats.elapsed_seconds = stop.elapsed_seconds();
  result.solutions = detail::collect(chains, spec);
  return result;
}

}  // namespace frontier
