#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "coverent/cover.hpp"
#include "coverent/markov.hpp"

namespace coverent {

enum class Method { exact, heuristic, greedy };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

// -p log2 p, with 0 log 0 = 0.
inline double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Shannon entropy in bits of a vector of block masses.
double shannon_bits(std::span<const double> masses);

// Partition entropy of a cover's elements under the system. Meaningful
// when the cover is a partition.
double partition_entropy(const ShiftMeasure& system, const Cover& partition);

// A choice, for every depth-D word, of one cover element containing it.
class Assignment {
 public:
  // `cover` is lifted to `depth`; throws InvalidInput if some word is
  // assigned an element that does not contain it.
  Assignment(const Cover& cover, int depth, std::vector<std::uint32_t> choice);

  const Cover& lifted_cover() const { return lifted_; }
  int depth() const { return lifted_.depth(); }
  std::span<const std::uint32_t> choice() const { return choice_; }

 private:
  Cover lifted_;
  std::vector<std::uint32_t> choice_;
};

// Block i = words with choice i; empty blocks dropped.
Partition induced_partition(const Assignment& a);

// Atoms of the lifted cover split into forced and free ones. A free atom
// has positive measure and lies in two or more elements; every other atom
// has its choice fixed in `base_choice` (zero-measure atoms take their
// smallest eligible element, which is also the lexicographic tie-break).
struct AssignmentSpace {
  Cover lifted;
  std::vector<double> atom_mass;
  std::vector<std::uint32_t> base_choice;
  std::vector<double> forced_mass;  // per element, mass of fixed atoms
  std::vector<AtomIndex> free_atoms;  // ascending
  std::vector<std::vector<std::uint32_t>> eligible;  // per free atom, ascending
};

AssignmentSpace make_assignment_space(const ShiftMeasure& system, const Cover& cover, int depth);
// Same, from precomputed cylinder measures at `depth`.
AssignmentSpace make_assignment_space(std::span<const double> cylinder, const Cover& cover, int depth);

// Entropy of the partition obtained by setting free atom t to free_choice[t].
double assignment_entropy(const AssignmentSpace& space, std::span<const std::uint32_t> free_choice);

struct AssignmentBudget {
  std::size_t max_free_words = 20;
  std::uint64_t max_nodes = std::uint64_t{1} << 26;
};

struct FreeSearchResult {
  double bits;
  std::vector<std::uint32_t> free_choice;
};

// Exact minimum over free-atom choices; ties (within 1e-12 bits) go to the
// lexicographically smallest choice vector. Branch-and-bound split into
// independent prefix tasks run in parallel. Throws CapacityError over budget.
FreeSearchResult exact_free_search(const AssignmentSpace& space, const AssignmentBudget& budget = {});

// Greedy start plus first-improvement local search, then `restarts - 1`
// random restarts; deterministic in the seed.
FreeSearchResult heuristic_free_search(const AssignmentSpace& space, std::uint64_t seed, int restarts);

// Greedy concentration start only, no search.
std::vector<std::uint32_t> greedy_free_choice(const AssignmentSpace& space);

struct StaticEntropy {
  double bits;
  Assignment assignment;
  Method method;
};

Assignment to_assignment(const AssignmentSpace& space, std::span<const std::uint32_t> free_choice);

// H_mu(U) restricted to depth-D assignments.
StaticEntropy static_cover_entropy_exact(const ShiftMeasure& system, const Cover& cover, int depth,
                                         const AssignmentBudget& budget = {});

StaticEntropy static_cover_entropy_heuristic(const ShiftMeasure& system, const Cover& cover, int depth,
                                             std::uint64_t seed, int restarts = 8);

// Exact within budget, heuristic otherwise; the method tag says which.
StaticEntropy static_cover_entropy(const ShiftMeasure& system, const Cover& cover, int depth,
                                   const AssignmentBudget& budget, std::uint64_t seed, int restarts = 8);

}  // namespace coverent
