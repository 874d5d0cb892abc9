#include "frontier/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frontier {

std::string_view to_string(ErrorMethod m) {
  switch (m) {
    case ErrorMethod::Combined: return "combined";
    case ErrorMethod::Linear: return "linear";
    case ErrorMethod::Euclidean: return "euclidean";
  }
  return "?";
}

std::optional<ErrorMethod> parse_error_method(std::string_view text) {
  if (text == "combined") return ErrorMethod::Combined;
  if (text == "linear") return ErrorMethod::Linear;
  if (text == "euclidean") return ErrorMethod::Euclidean;
  return std::nullopt;
}

std::optional<double> frontier_std_at(const Uef& uef, double mean_return) {
  const auto& pts = uef.points();
  if (mean_return < pts.front().mean_return || mean_return > pts.back().mean_return) return std::nullopt;
  const auto hi = std::lower_bound(pts.begin(), pts.end(), mean_return,
                                   [](const UefPoint& p, double r) { return p.mean_return < r; });
  if (hi->mean_return == mean_return) return hi->std_dev;
  const auto lo = hi - 1;
  const double t = (mean_return - lo->mean_return) / (hi->mean_return - lo->mean_return);
  return lo->std_dev + t * (hi->std_dev - lo->std_dev);
}

std::optional<double> frontier_return_at(const Uef& uef, double std_dev) {
  const auto& pts = uef.points();
  if (std_dev < pts.front().std_dev || std_dev > pts.back().std_dev) return std::nullopt;
  const auto hi = std::lower_bound(pts.begin(), pts.end(), std_dev,
                                   [](const UefPoint& p, double s) { return p.std_dev < s; });
  if (hi->std_dev == std_dev) {
    // Several vertices can share a std; the efficient one has the highest return.
    auto last = hi;
    while (last + 1 != pts.end() && (last + 1)->std_dev == std_dev) ++last;
    return last->mean_return;
  }
  const auto lo = hi - 1;
  const double t = (std_dev - lo->std_dev) / (hi->std_dev - lo->std_dev);
  return lo->mean_return + t * (hi->mean_return - lo->mean_return);
}

namespace {

std::optional<double> relative_percent(double value, double reference) {
  if (reference == 0.0) return std::nullopt;
  return 100.0 * std::abs(value - reference) / std::abs(reference);
}

double euclidean_percent(const FrontierPoint& point, const UefPoint& v, EuclideanScale scale) {
  const double dist = std::hypot(point.std_dev - v.std_dev, point.mean_return - v.mean_return);
  const double denom = scale == EuclideanScale::ReferenceStd ? v.std_dev : std::hypot(v.std_dev, v.mean_return);
  if (denom == 0.0) return dist == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 100.0 * dist / denom;
}

}  // namespace

AxisErrors axis_errors(const FrontierPoint& point, const Uef& uef) {
  AxisErrors out;
  if (const auto s = frontier_std_at(uef, point.mean_return)) out.x_error = relative_percent(point.std_dev, *s);
  if (const auto r = frontier_return_at(uef, point.std_dev)) out.y_error = relative_percent(point.mean_return, *r);
  return out;
}

std::optional<double> percentage_error_linear(const FrontierPoint& point, const Uef& uef) {
  const AxisErrors e = axis_errors(point, uef);
  if (e.x_error && e.y_error) return std::min(*e.x_error, *e.y_error);
  if (e.x_error) return e.x_error;
  return e.y_error;
}

double percentage_error_combined(const FrontierPoint& point, const Uef& uef, EuclideanScale scale) {
  const UefPoint* anchor = nullptr;
  if (point.mean_return < uef.front().mean_return) {
    anchor = &uef.front();
  } else if (point.mean_return > uef.back().mean_return) {
    anchor = &uef.back();
  }
  if (!anchor) return *percentage_error_linear(point, uef);
  double best = euclidean_percent(point, *anchor, scale);
  if (const auto r = frontier_return_at(uef, point.std_dev)) {
    if (const auto y = relative_percent(point.mean_return, *r)) best = std::min(best, *y);
  }
  return best;
}

double percentage_error_euclidean(const FrontierPoint& point, const Uef& uef, EuclideanScale scale) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : uef.points()) best = std::min(best, euclidean_percent(point, v, scale));
  return best;
}

double percentage_error(const FrontierPoint& point, const Uef& uef, ErrorMethod method) {
  switch (method) {
    case ErrorMethod::Combined: return percentage_error_combined(point, uef);
    case ErrorMethod::Euclidean: return percentage_error_euclidean(point, uef);
    case ErrorMethod::Linear: {
      const auto e = percentage_error_linear(point, uef);
      if (!e) throw EvaluationError("portfolio lies outside the frontier range on both axes");
      return *e;
    }
  }
  throw EvaluationError("unknown error method");
}

double mpe(std::span<const double> errors) {
  if (errors.empty()) throw EvaluationError("mean percentage error of an empty set");
  double total = 0.0;
  for (const double e : errors) total += e;
  return total / static_cast<double>(errors.size());
}

std::vector<std::size_t> non_dominated_indices(std::span<const FrontierPoint> points) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const FrontierPoint& p = points[i];
    const bool dominated = std::any_of(points.begin(), points.end(), [&](const FrontierPoint& q) {
      return q.mean_return >= p.mean_return && q.std_dev <= p.std_dev &&
             (q.mean_return > p.mean_return || q.std_dev < p.std_dev);
    });
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::vector<FrontierPoint> filter_dominated(std::span<const FrontierPoint> points) {
  std::vector<FrontierPoint> out;
  for (const std::size_t i : non_dominated_indices(points)) out.push_back(points[i]);
  return out;
}

double improvement(double earlier_mpe, double later_mpe) {
  if (!(earlier_mpe > 0.0)) throw EvaluationError("improvement needs a positive earlier MPE");
  return 100.0 * (earlier_mpe - later_mpe) / earlier_mpe;
}

ErrorReport evaluate_solution(const SolutionSet& solutions, const Uef& uef, ErrorMethod method,
                              bool filter_dominated_portfolios) {
  ErrorReport report;
  report.method = method;
  report.dominance_filtered = filter_dominated_portfolios;
  std::vector<FrontierPoint> points;
  points.reserve(solutions.entries.size());
  for (const auto& e : solutions.entries) points.push_back({e.stats.std_dev, e.stats.mean_return});

  if (filter_dominated_portfolios) {
    report.evaluated = non_dominated_indices(points);
  } else {
    report.evaluated.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) report.evaluated[i] = i;
  }
  report.errors.reserve(report.evaluated.size());
  for (const std::size_t i : report.evaluated) report.errors.push_back(percentage_error(points[i], uef, method));
  report.mpe = mpe(report.errors);
  return report;
}

}  // namespace frontier
