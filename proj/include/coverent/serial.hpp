#pragma once

// Straightforward single-threaded versions of the parallel kernels. They
// favour obviousness over speed and serve as oracles in the tests and as
// baselines in the benchmarks.

#include <cstdint>
#include <span>
#include <vector>

#include "coverent/assignment.hpp"
#include "coverent/cover.hpp"
#include "coverent/markov.hpp"
#include "coverent/setcover.hpp"

namespace coverent::serial {

// word_measure evaluated atom by atom.
std::vector<double> cylinder_measures(const MarkovSystem& system, int depth);

// Every one of the |U|^n candidate names, realized by testing each word.
DynamicJoin dyn_join(const Cover& u, int n);

// Full enumeration of free-atom choices in lexicographic order; the first
// strict minimum (by more than 1e-12 bits) wins.
FreeSearchResult exact_free_search(const AssignmentSpace& space);

// Minimum partition entropy over every assignment of every positive-mass
// word to any element containing it; no reductions. Throws CapacityError
// past max_assignments.
double min_assignment_entropy(std::span<const double> cylinder, const Cover& cover, int depth,
                              std::uint64_t max_assignments = std::uint64_t{1} << 20);

// Subfamilies by increasing size, each size in lexicographic order.
CoverSolution n_exact(const CoverInstance& instance);

// Count of packed words, one word after another.
std::uint64_t packing_census(int alphabet_size, int n, int k, double delta, std::span<const double> mu);

}  // namespace coverent::serial
