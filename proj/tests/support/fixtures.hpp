#pragma once

#include <memory>
#include <vector>

#include "frontier/model.hpp"
#include "synthetic.hpp"

namespace frontier::testing {

inline std::shared_ptr<const AssetUniverse> universe_of(std::vector<double> mu, std::vector<double> sd,
                                                        const std::vector<std::vector<double>>& rho) {
  SquareMatrix m(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (std::size_t j = 0; j < mu.size(); ++j) m(i, j) = rho[i][j];
  }
  return std::make_shared<const AssetUniverse>(std::move(mu), std::move(sd), std::move(m));
}

/// Stand-in for dataset `index` (0-based) of the five benchmark instances.
inline std::shared_ptr<const AssetUniverse> standin_universe(std::size_t index) {
  return std::make_shared<const AssetUniverse>(synthetic_universe(kBenchmarkSizes[index], index + 1));
}

inline ProblemSpec standin_spec(std::size_t index, std::size_t k = 10, double l = 0.01, std::size_t lambdas = 50) {
  return ProblemSpec(standin_universe(index), k, l, lambdas);
}

inline Portfolio portfolio_of(std::vector<Holding> holdings) { return Portfolio(std::move(holdings)); }

}  // namespace frontier::testing
