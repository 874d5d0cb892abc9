#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace frontier {

/// Seeded random stream with a platform-independent draw sequence.
///
/// std::mt19937_64's output is fixed by the standard, but the std distributions are not,
/// so the mappings to reals and bounded integers are done here.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi]; returns lo when hi <= lo.
  double uniform(double lo, double hi) {
    if (!(hi > lo)) return lo;
    const double x = lo + (hi - lo) * uniform01();
    return x > hi ? hi : x;
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace frontier
