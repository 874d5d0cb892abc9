#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

namespace frontier {

using Clock = std::chrono::steady_clock;

/// Wall-clock allowance measured on the monotonic clock. expired() latches.
class Budget {
 public:
  explicit Budget(double total_seconds, Clock::time_point start = Clock::now());

  double total_seconds() const { return total_seconds_; }
  Clock::time_point start() const { return start_; }
  Clock::time_point deadline() const { return deadline_; }

  bool expired();
  double elapsed_seconds() const;

 private:
  double total_seconds_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  bool expired_ = false;
};

/// When a solver stops: a wall-clock budget, a cap on full lambda sweeps, or both.
/// The sweep cap makes runs exactly reproducible; the budget is the anytime mode.
class StopCondition {
 public:
  static StopCondition wall_clock(double seconds) { return StopCondition(seconds, std::nullopt); }
  static StopCondition sweeps(std::uint64_t cap) { return StopCondition(std::nullopt, cap); }

  StopCondition(std::optional<double> seconds, std::optional<std::uint64_t> sweep_cap);

  /// Starts the clock. Call once, at solver entry.
  void start();

  /// Checked between single-lambda steps.
  bool should_stop(std::uint64_t completed_sweeps);
  bool deterministic() const { return !budget_.has_value(); }

  Budget* budget() { return budget_ ? &*budget_ : nullptr; }
  std::optional<std::uint64_t> sweep_cap() const { return sweep_cap_; }
  std::optional<double> seconds() const { return seconds_; }
  double elapsed_seconds() const;

 private:
  std::optional<double> seconds_;
  std::optional<std::uint64_t> sweep_cap_;
  std::optional<Budget> budget_;
  Clock::time_point started_ = Clock::now();
};

}  // namespace frontier
