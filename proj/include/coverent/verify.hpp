#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coverent {

struct VerifyReport {
  std::string text;  // deterministic for a given suite, seed and instance count
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  bool passed() const { return failures == 0; }
};

// cover-algebra, assignment, setcover, combinatorics, estimators, all.
const std::vector<std::string>& verify_suites();

// Random and exhaustive-small instances of every module property. Each
// failure line carries the instance, shrunk where the instance is a cover.
// Throws InvalidInput for an unknown suite.
VerifyReport run_verify_suite(std::string_view suite, std::uint64_t seed, int instances);

}  // namespace coverent
