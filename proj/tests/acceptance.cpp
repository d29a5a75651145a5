// One line per acceptance criterion; exit status 1 if any fails.

#include <filesystem>
#include <iostream>

#include "fuzzynv/verification/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace fuzzynv::verification;
  AcceptanceOptions o;
  if (argc > 1) o.scratch_dir = argv[1];
  int failed = 0;
  run_acceptance(o, [&](const CriterionResult& r) {
    std::cout << format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  });
  std::cout << failed << " of 10 criteria failed\n";
  return failed == 0 ? 0 : 1;
}
