#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace polycensus {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

enum class Suite { Quick, Full };

struct AcceptanceConfig {
  Suite suite = Suite::Full;
  int jobs = 1;
  std::vector<int> only;  // empty: all twelve
  std::string work_dir;   // empty: a fresh directory under the system temp dir
  uint64_t seed = 20240601;
};

using ResultSink = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, const ResultSink& sink = {});

// "PASS C01 <title> | measured: ... | expected: ... | 1.23s"
std::string format_result(const CriterionResult& r);

}  // namespace polycensus
