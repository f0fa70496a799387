#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coverent/assignment.hpp"
#include "coverent/cover.hpp"
#include "coverent/markov.hpp"

namespace coverent {

// Covering problem over the atoms of a cover's depth.
//
// epsilon > 0: cover all atoms up to uncovered measure strictly less than
// epsilon, i.e. covered measure > 1 - epsilon. epsilon == 0: cover every
// atom, the set-theoretic N(V); atom measures are then ignored.
struct CoverInstance {
  std::vector<double> atom_measures;
  std::vector<std::vector<std::uint32_t>> sets;  // ascending atom ids
  double epsilon = 0.0;

  bool full_cover() const { return epsilon == 0.0; }
};

// Validates that measures sum to 1 within 1e-10 and every atom is in some
// set; throws InvalidInput otherwise.
void validate(const CoverInstance& instance);

CoverInstance make_cover_instance(const ShiftMeasure& system, const Cover& cover, double epsilon);
CoverInstance make_cover_instance(std::span<const double> cylinder, const Cover& cover, double epsilon);
// System-independent full-cover instance (uniform atom weights).
CoverInstance make_full_cover_instance(const Cover& cover);

struct CoverSolution {
  std::size_t count;
  std::vector<std::uint32_t> witness;  // ascending set indices
  Method method;
};

struct SetCoverBudget {
  std::size_t max_sets = 4096;  // after reductions
  std::uint64_t max_nodes = 10'000'000;
};

// Does the family meet the instance's target? Independent of both solvers.
bool meets_target(const CoverInstance& instance, std::span<const std::uint32_t> family);

// Minimum-cardinality family. Reductions (empty, duplicate and dominated
// sets; forced sets in full mode; a closed form when the sets are
// disjoint) run before branch-and-bound, which is split into independent
// top-level branches solved in parallel. Throws CapacityError past budget.
CoverSolution n_exact(const CoverInstance& instance, const SetCoverBudget& budget = {});

// Repeatedly take the set with the largest uncovered measure (ties to the
// lowest index) until the target is met.
CoverSolution n_greedy(const CoverInstance& instance);

// Greedy, then repeatedly drop one set and look for single swaps that win
// the target back. Deterministic; tagged heuristic when it beats greedy.
CoverSolution n_local_search(const CoverInstance& instance, std::uint64_t max_moves = 10'000);

}  // namespace coverent
