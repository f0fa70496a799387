#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "coverent/combinatorics.hpp"
#include "coverent/config.hpp"

namespace coverent {

enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitInvalidInput = 2,
  kExitBudget = 3,
};

// One trace CSV per requested notion (and epsilon) plus summary.csv in
// cfg.output. Budget breaches leave a partial trace with a truncation row
// and return kExitBudget.
int run_entropy(const ExperimentConfig& cfg, std::ostream& log);

// Prints the report; writes it to `report_path` too when nonempty.
int run_verify(std::string_view suite, std::uint64_t seed, int instances, const std::filesystem::path& report_path,
               std::ostream& out);

struct CensusRequest {
  int alphabet = 2;
  int n = 2;
  int k_min = 2;
  int k_max = 8;
  std::vector<double> deltas{0.25};
  std::vector<double> mu;  // empty: uniform on the M^n blocks
  CensusBudget budget;
  std::filesystem::path output;  // directory; empty: stdout only
};

// Table k,delta,exact_count,bound,ratio. Rows past the enumeration budget
// carry exact_count "over_budget" and an empty ratio.
int run_census(const CensusRequest& req, std::ostream& out);

// decompose.csv in cfg.output, one row per horizon in cfg.decompose_n.
int run_decompose(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace coverent
