#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nfc {

struct SuiteResult {
  std::string name;
  long cases = 0;
  long checks = 0;      // individual assertions evaluated
  long skipped = 0;     // conditional properties whose hypothesis did not hold
  long violations = 0;
  std::vector<std::string> messages;  // first few violations, in case order
  double seconds = 0;
  bool ok() const { return violations == 0; }
};

std::vector<std::string> suite_names();  // appendix, filtration, powerform

// Cases run on `threads` workers (0: hardware concurrency); output is independent of it.
SuiteResult run_suite(const std::string& name, long cases, std::uint64_t seed, unsigned threads = 0);

}  // namespace nfc
