#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hermiwitt {

// One randomized invariant suite. A case that ends in an inconclusive error
// (precision, oracle budget) is counted apart from failures.
struct SuiteResult {
  std::string module;
  std::string suite;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  std::string first_failure;
  int total() const { return passed + failed + inconclusive; }
};

struct SelftestReport {
  long prime = 0;
  int precision = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool ok() const;
  bool any_inconclusive() const;
};

// every invariant suite of every module, at the given field and seed
SelftestReport run_selftest(long prime, int precision, std::uint64_t seed);

}  // namespace hermiwitt
