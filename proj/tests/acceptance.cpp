// Acceptance runner: one PASS/FAIL line per criterion; nonzero exit if any fails.

#include <iostream>

#include "focklab/verification.hpp"

int main() {
  int failed = 0;
  for (const auto& check : focklab::verification::acceptance_checks()) {
    const auto r = check();
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.title << "  [" << r.detail << "] ("
              << r.seconds << " s)" << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
