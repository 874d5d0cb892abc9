#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frontier {

/// Raised for malformed or inconsistent asset / frontier files.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major square matrix. Small and cache-friendly enough for N <= a few hundred.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const double* row(std::size_t i) const { return data_.data() + i * n_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Asset universe as stored in an OR-Library `port` file plus the derived covariance.
///
/// Immutable after construction; share it by const reference (or shared_ptr<const>)
/// across concurrent solver runs.
class AssetUniverse {
 public:
  /// Validates dimensions, std_devs >= 0 and correlation bounds, then builds the covariance.
  AssetUniverse(std::vector<double> mean_returns, std::vector<double> std_devs,
                SquareMatrix correlations);

  std::size_t size() const { return mean_returns_.size(); }
  const std::vector<double>& mean_returns() const { return mean_returns_; }
  const std::vector<double>& std_devs() const { return std_devs_; }
  const SquareMatrix& correlations() const { return correlations_; }
  const SquareMatrix& covariance() const { return covariance_; }

  double mean_return(std::size_t i) const { return mean_returns_[i]; }
  double covariance(std::size_t i, std::size_t j) const { return covariance_(i, j); }

 private:
  std::vector<double> mean_returns_;
  std::vector<double> std_devs_;
  SquareMatrix correlations_;
  SquareMatrix covariance_;
};

/// sigma_ij = rho_ij * s_i * s_j. Requires |rho| <= 1 + 1e-9 and a unit diagonal.
SquareMatrix build_covariance(const std::vector<double>& std_devs, const SquareMatrix& correlations);

/// One vertex of an unconstrained efficient frontier.
struct UefPoint {
  double mean_return = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
};

/// Unconstrained efficient frontier, sorted by ascending mean return.
class Uef {
 public:
  /// Takes (mean_return, variance) pairs in any order. Throws DatasetError when empty,
  /// when a variance is negative, or when variance decreases as return increases.
  explicit Uef(std::vector<std::pair<double, double>> return_variance);

  std::size_t size() const { return points_.size(); }
  const std::vector<UefPoint>& points() const { return points_; }
  const UefPoint& front() const { return points_.front(); }
  const UefPoint& back() const { return points_.back(); }

 private:
  std::vector<UefPoint> points_;
};

AssetUniverse parse_universe(std::istream& in);
Uef load_uef(std::istream& in);

AssetUniverse load_universe_file(const std::filesystem::path& path);
Uef load_uef_file(const std::filesystem::path& path);

/// Writes the universe back in `port` format (upper-triangle pairs including i = j),
/// with enough digits that re-parsing is bit-exact.
void write_universe(std::ostream& out, const AssetUniverse& universe);
void write_uef(std::ostream& out, const Uef& uef);

}  // namespace frontier
