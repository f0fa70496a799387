#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coverent/assignment.hpp"
#include "coverent/cover.hpp"
#include "coverent/markov.hpp"
#include "coverent/setcover.hpp"

namespace coverent {

enum class Notion { h_minus, h_plus, h_e, h_c };

std::string_view notion_name(Notion n);
Notion parse_notion(std::string_view name);

struct TraceRecord {
  int n = 0;
  double value = 0.0;  // bits per step
  Method method = Method::exact;
  std::optional<double> epsilon;  // h_e only
  std::optional<int> depth;       // assignment depth, h_plus only
  // h_minus: running infimum of the exact values up to n.
  // h_plus: H(alpha_0^{n-1}) / n for the winning candidate.
  // h_e, h_c: the covering number itself.
  double aux = 0.0;
};

struct Truncation {
  int at_n = 0;
  std::string reason;
};

struct EntropyTrace {
  Notion notion = Notion::h_minus;
  std::vector<TraceRecord> records;  // n = 1, 2, ... in order
  double estimate = 0.0;
  bool monotone = true;  // values nonincreasing in n
  std::optional<Truncation> truncation;

  // Record for step n; throws std::out_of_range when absent.
  const TraceRecord& at(int n) const;
};

struct EstimatorConfig {
  DynJoinBudget join;
  AssignmentBudget assignment;
  SetCoverBudget setcover;
  // h_plus enumerates every depth-D assignment up to this many candidates.
  std::size_t max_candidates = 4096;
  std::uint64_t seed = 0;
  int restarts = 8;
  // On a capacity error keep the records so far and mark the truncation
  // instead of throwing.
  bool allow_partial = false;
};

// (1/n) H_mu(U_0^{n-1}) for n = 1..n_max, exact where the assignment budget
// allows and heuristic otherwise.
EntropyTrace h_minus_trace(const ShiftMeasure& system, const Cover& u, int n_max, const EstimatorConfig& cfg = {});

// min over depth-D assignments alpha of H(alpha_0^{n-1}) - H(alpha_0^{n-2}).
EntropyTrace h_plus_trace(const ShiftMeasure& system, const Cover& u, int n_max, int depth,
                          const EstimatorConfig& cfg = {});

// (1/n) log2 N(U_0^{n-1}, epsilon).
EntropyTrace h_e_trace(const ShiftMeasure& system, const Cover& u, double epsilon, int n_max,
                       const EstimatorConfig& cfg = {});

// (1/n) log2 N(U_0^{n-1}); needs no measure.
EntropyTrace h_c_trace(const Cover& u, int n_max, const EstimatorConfig& cfg = {});

struct Decomposition {
  int n = 0;
  double mixture_value = 0.0;
  std::vector<double> component_values;
  double weighted_sum = 0.0;
  double gap = 0.0;  // mixture_value - weighted_sum
};

// Finite-n comparison of a notion on a mixture against the weighted
// component values. `depth` is used by h_plus only.
Decomposition decompose(const MixtureSystem& mixture, const Cover& u, int n, Notion notion, int depth = 0,
                        const EstimatorConfig& cfg = {});

// U_0^{m-1} read as a cover of the m-block shift: alphabet M^m, depth
// ceil((d + m - 1) / m). Pairs with block_system(system, m).
Cover block_cover(const Cover& u, int m);

}  // namespace coverent
