// Runs the acceptance suite and prints one line per criterion.
// Usage: acceptance [criterion numbers...]

#include <cstdlib>
#include <iostream>

#include "latmatch/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto results = latmatch::acceptance::run({}, only);
  bool ok = true;
  for (const auto& c : results) {
    std::cout << latmatch::acceptance::format_line(c) << "\n";
    for (std::size_t i = 1; i < c.failures.size() && i < 20; ++i) std::cout << "    " << c.failures[i] << "\n";
    ok = ok && c.ok;
  }
  return ok ? 0 : 1;
}
