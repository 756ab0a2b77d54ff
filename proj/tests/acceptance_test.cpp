// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fidbandit/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.push_back(static_cast<std::size_t>(std::stoul(argv[i])));
  const bool ok = fidbandit::acceptance::run_all(std::cout, only);
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
