#include "frontier/budget.hpp"

#include <stdexcept>

namespace frontier {

Budget::Budget(double total_seconds, Clock::time_point start)
    : total_seconds_(total_seconds),
      start_(start),
      deadline_(start + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(total_seconds < 0 ? 0 : total_seconds))) {}

bool Budget::expired() {
  if (!expired_ && Clock::now() >= deadline_) expired_ = true;
  return expired_;
}

double Budget::elapsed_seconds() const {
  return std::chrono::duration<double>(Clock::now() - start_).count();
}

StopCondition::StopCondition(std::optional<double> seconds, std::optional<std::uint64_t> sweep_cap)
    : seconds_(seconds), sweep_cap_(sweep_cap) {
  if (!seconds_ && !sweep_cap_) throw std::invalid_argument("stop condition needs a budget or a sweep cap");
  if (seconds_ && !(*seconds_ >= 0.0)) throw std::invalid_argument("budget must be non-negative");
}

void StopCondition::start() {
  started_ = Clock::now();
  if (seconds_) budget_.emplace(*seconds_, started_);
}

bool StopCondition::should_stop(std::uint64_t completed_sweeps) {
  if (sweep_cap_ && completed_sweeps >= *sweep_cap_) return true;
  return budget_ && budget_->expired();
}

double StopCondition::elapsed_seconds() const {
  return std::chrono::duration<double>(Clock::now() - started_).count();
}

}  // namespace frontier
