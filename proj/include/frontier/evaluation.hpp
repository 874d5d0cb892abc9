#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/solvers.hpp"

namespace frontier {

class EvaluationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A portfolio in (risk, return) space; risk is always standard deviation.
struct FrontierPoint {
  double std_dev = 0.0;
  double mean_return = 0.0;
};

enum class ErrorMethod { Combined, Linear, Euclidean };

std::string_view to_string(ErrorMethod m);
std::optional<ErrorMethod> parse_error_method(std::string_view text);

/// Normaliser for a Euclidean distance to a frontier vertex: the vertex's standard deviation
/// or its norm in (std, return) space.
enum class EuclideanScale { ReferenceStd, ReferenceNorm };

/// Piecewise-linear frontier std at return r; nullopt outside [r_min, r_max].
std::optional<double> frontier_std_at(const Uef& uef, double mean_return);
/// Piecewise-linear frontier return at std s; nullopt outside [s_min, s_max].
std::optional<double> frontier_return_at(const Uef& uef, double std_dev);

struct AxisErrors {
  std::optional<double> x_error;  ///< along the risk axis, percent of the frontier std
  std::optional<double> y_error;  ///< along the return axis, percent of the frontier return
};

AxisErrors axis_errors(const FrontierPoint& point, const Uef& uef);

/// Smaller of the computable axis errors; nullopt when neither axis is in range.
std::optional<double> percentage_error_linear(const FrontierPoint& point, const Uef& uef);

/// Linear method when the return is inside the frontier's return range. Below it: the smaller of
/// the return-axis error and the Euclidean distance to the lowest-return vertex. Above it the
/// same rule is mirrored at the highest-return vertex.
double percentage_error_combined(const FrontierPoint& point, const Uef& uef,
                                 EuclideanScale scale = EuclideanScale::ReferenceStd);

/// 100 * min over vertices of |point - v| / scale(v).
double percentage_error_euclidean(const FrontierPoint& point, const Uef& uef,
                                  EuclideanScale scale = EuclideanScale::ReferenceNorm);

/// Dispatch; throws EvaluationError when the linear method cannot measure the point.
double percentage_error(const FrontierPoint& point, const Uef& uef, ErrorMethod method);

double mpe(std::span<const double> errors);

/// Indices of points no other point dominates (higher-or-equal return at lower-or-equal risk,
/// strictly better in one), in input order.
std::vector<std::size_t> non_dominated_indices(std::span<const FrontierPoint> points);
std::vector<FrontierPoint> filter_dominated(std::span<const FrontierPoint> points);

/// 100 * (earlier - later) / earlier.
double improvement(double earlier_mpe, double later_mpe);

struct ErrorReport {
  ErrorMethod method = ErrorMethod::Combined;
  bool dominance_filtered = false;
  std::vector<std::size_t> evaluated;  ///< solution indices that entered the MPE
  std::vector<double> errors;          ///< percent, parallel to `evaluated`
  double mpe = 0.0;
};

ErrorReport evaluate_solution(const SolutionSet& solutions, const Uef& uef, ErrorMethod method,
                              bool filter_dominated_portfolios = false);

}  // namespace frontier
