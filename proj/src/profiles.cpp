#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "frontier/solvers.hpp"

namespace frontier {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::SimulatedAnnealing: return "sa";
    case Algorithm::TabuSearch: return "ts";
    case Algorithm::GeneticAlgorithm: return "ga";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sa") return Algorithm::SimulatedAnnealing;
  if (lower == "ts") return Algorithm::TabuSearch;
  if (lower == "ga") return Algorithm::GeneticAlgorithm;
  return std::nullopt;
}

void validate(const SaProfile& p) {
  if (!(p.t_max > 0.0)) throw std::invalid_argument("SA initial temperature must be positive");
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw std::invalid_argument("SA alpha must lie in (0, 1)");
}

void validate(const TsProfile& p) {
  if (p.subset_size < 1) throw std::invalid_argument("TS subset size must be at least 1");
  if (p.active_lists > 0xFu) throw std::invalid_argument("TS active list mask has unknown bits");
}

void validate(const GaProfile& p) {
  if (p.population_size < 2) throw std::invalid_argument("GA population must hold at least 2 members");
  if (p.pool_size < p.population_size) throw std::invalid_argument("GA pool must be at least the population size");
  if (!(p.p_replace >= 0.0 && p.p_replace <= 1.0) || !(p.p_weights >= 0.0 && p.p_weights <= 1.0)) {
    throw std::invalid_argument("GA mutation probabilities must lie in [0, 1]");
  }
}

namespace {

constexpr std::array<double, 3> kTabulated = {1.0, 5.0, 25.0};

std::size_t tabulated_index(double total_seconds) {
  if (!(total_seconds > 0.0)) throw std::invalid_argument("budget must be positive");
  const double x = std::log(total_seconds);
  std::size_t best = 0;
  double best_dist = std::abs(x - std::log(kTabulated[0]));
  for (std::size_t i = 1; i < kTabulated.size(); ++i) {
    const double d = std::abs(x - std::log(kTabulated[i]));
    if (d < best_dist - 1e-12) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

double nearest_tabulated_budget(double total_seconds) { return kTabulated[tabulated_index(total_seconds)]; }

SaProfile sa_profile_for_budget(double total_seconds) {
  constexpr std::array<double, 3> alpha = {0.7, 0.95, 0.995};
  SaProfile p;
  p.t_max = 0.00005;
  p.alpha = alpha[tabulated_index(total_seconds)];
  return p;
}

TsProfile ts_profile_for_budget(double total_seconds) {
  constexpr std::array<std::size_t, 3> subset = {10, 50, 250};
  TsProfile p;
  p.subset_size = subset[tabulated_index(total_seconds)];
  p.tenure = 3;
  p.active_lists = kWeightDownList;
  return p;
}

GaProfile ga_profile_for_budget(double total_seconds) {
  constexpr std::array<std::size_t, 3> population = {20, 50, 200};
  GaProfile p;
  p.population_size = population[tabulated_index(total_seconds)];
  p.pool_size = 1000;
  return p;
}

AlgorithmProfile profile_for_budget(Algorithm algorithm, double total_seconds) {
  switch (algorithm) {
    case Algorithm::SimulatedAnnealing: return sa_profile_for_budget(total_seconds);
    case Algorithm::TabuSearch: return ts_profile_for_budget(total_seconds);
    case Algorithm::GeneticAlgorithm: return ga_profile_for_budget(total_seconds);
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm algorithm_of(const AlgorithmProfile& profile) {
  if (std::holds_alternative<SaProfile>(profile)) return Algorithm::SimulatedAnnealing;
  if (std::holds_alternative<TsProfile>(profile)) return Algorithm::TabuSearch;
  return Algorithm::GeneticAlgorithm;
}

SolveResult solve(const ProblemSpec& spec, std::span<const double> lambdas, const AlgorithmProfile& profile,
                  StopCondition stop, RngStream& rng, const RunOptions& options) {
  return std::visit(
      [&](const auto& p) -> SolveResult {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SaProfile>) return run_sa(spec, lambdas, p, stop, rng, options);
        else if constexpr (std::is_same_v<P, TsProfile>) return run_ts(spec, lambdas, p, stop, rng, options);
        else return run_ga(spec, lambdas, p, stop, rng, options);
      },
      profile);
}

}  // namespace frontier
