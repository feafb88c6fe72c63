// Verification suite runner: one PASS/FAIL line per criterion, nonzero exit
// on any failure. With no arguments it runs everything; otherwise the
// arguments select criterion ids.
#include <cstdlib>
#include <iostream>
#include <vector>

#include "ccopt/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  const int failures = ccopt::acceptance::run(ids, std::cout);
  if (failures > 0) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
