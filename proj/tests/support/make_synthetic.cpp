// Writes stand-in port1..port5 / portef1..portef5 files into the given directory.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make-synthetic <out-dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  for (std::size_t d = 0; d < 5; ++d) {
    const std::string n = std::to_string(d + 1);
    if (std::filesystem::exists(dir / ("port" + n + ".txt")) && std::filesystem::exists(dir / ("portef" + n + ".txt"))) {
      continue;
    }
    const auto universe = frontier::testing::synthetic_universe(frontier::testing::kBenchmarkSizes[d], d + 1);
    const frontier::Uef uef(frontier::testing::synthetic_frontier(universe, 200));
    std::ofstream port(dir / ("port" + n + ".txt"));
    frontier::write_universe(port, universe);
    std::ofstream portef(dir / ("portef" + n + ".txt"));
    frontier::write_uef(portef, uef);
    std::cout << "port" << n << ": " << universe.size() << " assets, " << uef.size() << " frontier points\n";
  }
  return 0;
}
