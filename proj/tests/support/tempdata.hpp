#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "frontier/dataset.hpp"
#include "frontier/harness.hpp"
#include "synthetic.hpp"

namespace frontier::testing {

/// Writes stand-in port/portef files for dataset `index` into a per-process temp directory.
inline DatasetRef write_standin(std::size_t index, std::size_t frontier_points = 40) {
  const auto dir = std::filesystem::temp_directory_path() / ("frontier-unit-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string n = std::to_string(index + 1);
  DatasetRef ref{"port" + n, dir / ("port" + n + ".txt"), dir / ("portef" + n + ".txt")};
  if (!std::filesystem::exists(ref.frontier)) {
    const auto u = synthetic_universe(kBenchmarkSizes[index], index + 1);
    std::ofstream a(ref.assets);
    write_universe(a, u);
    std::ofstream f(ref.frontier);
    write_uef(f, Uef(synthetic_frontier(u, frontier_points)));
  }
  return ref;
}

}  // namespace frontier::testing
