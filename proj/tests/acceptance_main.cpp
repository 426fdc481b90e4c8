// Acceptance suite: one PASS/FAIL line per criterion.
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "polycensus/acceptance.hpp"

int main(int argc, char** argv) {
  polycensus::AcceptanceConfig cfg;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--quick") cfg.suite = polycensus::Suite::Quick;
    else if (a == "--jobs" && i + 1 < argc) cfg.jobs = std::atoi(argv[++i]);
    else if (a == "--only" && i + 1 < argc) cfg.only.push_back(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--quick] [--jobs N] [--only ID]...\n";
      return 2;
    }
  }
  int failed = 0;
  polycensus::run_acceptance(cfg, [&](const polycensus::CriterionResult& r) {
    std::cout << polycensus::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
