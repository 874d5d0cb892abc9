#include "frontier/rng.hpp"

#include <limits>

namespace frontier {

std::size_t RngStream::below(std::size_t bound) {
  // Rejection on the top of the range removes modulo bias.
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % b);
}

}  // namespace frontier
