#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontier/dataset.hpp"

namespace frontier {

/// Thrown when (k, min_weight, lambda_count) cannot describe a feasible problem.
class InfeasibleSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kMinWeightSlack = 1e-12;

struct Holding {
  std::size_t asset = 0;
  double weight = 0.0;

  bool operator==(const Holding&) const = default;
};

/// A set of held assets with weights. Holdings keep insertion order; the order carries
/// no meaning for the objective but keeps seeded runs reproducible.
class Portfolio {
 public:
  Portfolio() = default;
  explicit Portfolio(std::vector<Holding> holdings) : holdings_(std::move(holdings)) {}

  std::size_t size() const { return holdings_.size(); }
  const std::vector<Holding>& holdings() const { return holdings_; }
  std::vector<Holding>& holdings() { return holdings_; }
  const Holding& operator[](std::size_t slot) const { return holdings_[slot]; }
  Holding& operator[](std::size_t slot) { return holdings_[slot]; }

  bool contains(std::size_t asset) const;
  /// Slot of `asset` in holdings(), or size() if not held.
  std::size_t slot_of(std::size_t asset) const;
  double weight_sum() const;

  bool operator==(const Portfolio&) const = default;

 private:
  std::vector<Holding> holdings_;
};

/// The cardinality-constrained problem: which universe, K, l and the lambda grid size.
class ProblemSpec {
 public:
  ProblemSpec(std::shared_ptr<const AssetUniverse> universe, std::size_t k = 10,
              double min_weight = 0.01, std::size_t lambda_count = 50);

  const AssetUniverse& universe() const { return *universe_; }
  const std::shared_ptr<const AssetUniverse>& universe_ptr() const { return universe_; }
  std::size_t asset_count() const { return universe_->size(); }
  std::size_t k() const { return k_; }
  double min_weight() const { return min_weight_; }
  std::size_t lambda_count() const { return lambda_count_; }

 private:
  std::shared_ptr<const AssetUniverse> universe_;
  std::size_t k_;
  double min_weight_;
  std::size_t lambda_count_;
};

struct PortfolioStats {
  double mean_return = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
};

enum class Constraint { SumToOne, Cardinality, MinWeight, IndexRange };

std::string to_string(Constraint c);

struct Feasibility {
  std::vector<Constraint> violated;
  bool feasible() const { return violated.empty(); }
};

Feasibility check_feasible(const Portfolio& p, const ProblemSpec& spec);

/// Sum of w_i mu_i and w' Sigma w over the held assets only; O(K^2).
/// Throws std::domain_error when the variance comes out below -1e-12; smaller negatives clamp to 0.
PortfolioStats portfolio_stats(const Portfolio& p, const AssetUniverse& universe);
inline PortfolioStats portfolio_stats(const Portfolio& p, const ProblemSpec& spec) {
  return portfolio_stats(p, spec.universe());
}

/// lambda * variance - (1 - lambda) * mean return.
double objective(const Portfolio& p, const AssetUniverse& universe, double lambda);
inline double objective(const Portfolio& p, const ProblemSpec& spec, double lambda) {
  return objective(p, spec.universe(), lambda);
}

/// count values (e-1)/(count-1), e = 1..count; both endpoints included.
std::vector<double> lambda_grid(std::size_t count);

}  // namespace frontier
