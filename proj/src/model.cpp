#include "frontier/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontier {

bool Portfolio::contains(std::size_t asset) const { return slot_of(asset) != holdings_.size(); }

std::size_t Portfolio::slot_of(std::size_t asset) const {
  for (std::size_t s = 0; s < holdings_.size(); ++s) {
    if (holdings_[s].asset == asset) return s;
  }
  return holdings_.size();
}

double Portfolio::weight_sum() const {
  double total = 0.0;
  for (const auto& h : holdings_) total += h.weight;
  return total;
}

ProblemSpec::ProblemSpec(std::shared_ptr<const AssetUniverse> universe, std::size_t k,
                         double min_weight, std::size_t lambda_count)
    : universe_(std::move(universe)), k_(k), min_weight_(min_weight), lambda_count_(lambda_count) {
  if (!universe_) throw std::invalid_argument("problem needs an asset universe");
  if (k_ < 1 || k_ > universe_->size()) {
    throw InfeasibleSpecError("cardinality k=" + std::to_string(k_) + " must lie in [1, " +
                              std::to_string(universe_->size()) + "]");
  }
  if (!(min_weight_ >= 0.0) || static_cast<double>(k_) * min_weight_ > 1.0 + kWeightSumTolerance) {
    throw InfeasibleSpecError("k * min_weight must not exceed 1 (k=" + std::to_string(k_) +
                              ", min_weight=" + std::to_string(min_weight_) + ")");
  }
  if (lambda_count_ < 2) throw InfeasibleSpecError("lambda grid needs at least 2 values");
}

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::SumToOne: return "sum-to-one";
    case Constraint::Cardinality: return "cardinality";
    case Constraint::MinWeight: return "min-weight";
    case Constraint::IndexRange: return "index-range";
  }
  return "unknown";
}

Feasibility check_feasible(const Portfolio& p, const ProblemSpec& spec) {
  Feasibility verdict;
  const auto& h = p.holdings();
  if (std::abs(p.weight_sum() - 1.0) > kWeightSumTolerance) {
    verdict.violated.push_back(Constraint::SumToOne);
  }

  std::vector<std::size_t> assets;
  assets.reserve(h.size());
  bool out_of_range = false;
  for (const auto& holding : h) {
    if (holding.asset >= spec.asset_count()) out_of_range = true;
    assets.push_back(holding.asset);
  }
  std::sort(assets.begin(), assets.end());
  const bool duplicates = std::adjacent_find(assets.begin(), assets.end()) != assets.end();
  if (h.size() != spec.k() || duplicates) verdict.violated.push_back(Constraint::Cardinality);

  const bool below_min = std::any_of(h.begin(), h.end(), [&](const Holding& x) {
    return !(x.weight >= spec.min_weight() - kMinWeightSlack);
  });
  if (below_min) verdict.violated.push_back(Constraint::MinWeight);
  if (out_of_range) verdict.violated.push_back(Constraint::IndexRange);
  return verdict;
}

PortfolioStats portfolio_stats(const Portfolio& p, const AssetUniverse& universe) {
  const auto& h = p.holdings();
  const SquareMatrix& cov = universe.covariance();
  double mean = 0.0;
  double variance = 0.0;
  for (std::size_t a = 0; a < h.size(); ++a) {
    mean += h[a].weight * universe.mean_return(h[a].asset);
    const double* row = cov.row(h[a].asset);
    double inner = 0.0;
    for (std::size_t b = 0; b < h.size(); ++b) inner += h[b].weight * row[h[b].asset];
    variance += h[a].weight * inner;
  }
  if (variance < 0.0) {
    if (variance < -1e-12) throw std::domain_error("portfolio variance is negative");
    variance = 0.0;
  }
  return {mean, variance, std::sqrt(variance)};
}

double objective(const Portfolio& p, const AssetUniverse& universe, double lambda) {
  const PortfolioStats s = portfolio_stats(p, universe);
  return lambda * s.variance - (1.0 - lambda) * s.mean_return;
}

std::vector<double> lambda_grid(std::size_t count) {
  if (count < 2) throw std::invalid_argument("lambda grid needs at least 2 values");
  std::vector<double> grid(count);
  const double denom = static_cast<double>(count - 1);
  for (std::size_t e = 0; e < count; ++e) grid[e] = static_cast<double>(e) / denom;
  return grid;
}

}  // namespace frontier
