// Runs acceptance criteria 1-8 and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance_checks.hpp"

int main(int argc, char** argv) {
  relim::verify::SuiteOptions options;
  bool details = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--details") {
      details = true;
    } else if (arg == "--verbose") {
      details = true;
      options.verbose = true;
    } else {
      std::cerr << "usage: acceptance [--details] [--verbose]\n";
      return 2;
    }
  }
  bool all = true;
  relim::verify::run_suite(options, [&](const relim::verify::CriterionResult& r) {
    std::cout << relim::verify::format_result(r, details) << std::flush;
    all = all && r.pass;
  });
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
