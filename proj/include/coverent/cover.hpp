#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coverent/markov.hpp"

namespace coverent {

// A depth-d cylinder event: a set of depth-d words, stored as the sorted,
// duplicate-free list of their atom indices.
class WordSet {
 public:
  WordSet(int alphabet_size, int depth, std::vector<AtomIndex> members);

  static WordSet full(int alphabet_size, int depth);
  static WordSet from_words(int alphabet_size, int depth, std::span<const Word> words);

  int alphabet_size() const { return alphabet_size_; }
  int depth() const { return depth_; }
  std::span<const AtomIndex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(AtomIndex atom) const;
  bool is_subset_of(const WordSet& other) const;
  std::vector<Word> words() const;

  friend bool operator==(const WordSet& a, const WordSet& b) {
    return a.depth_ == b.depth_ && a.alphabet_size_ == b.alphabet_size_ && a.members_ == b.members_;
  }
  friend bool operator<(const WordSet& a, const WordSet& b) { return a.members_ < b.members_; }

 private:
  int alphabet_size_;
  int depth_;
  std::vector<AtomIndex> members_;
};

WordSet intersect(const WordSet& a, const WordSet& b);

double set_measure(const ShiftMeasure& system, const WordSet& set);
// Same, with precomputed cylinder measures at the set's depth.
double set_measure(std::span<const double> cylinder, const WordSet& set);

// Finite family of word sets at a common depth whose union is every word.
class Cover {
 public:
  Cover(int alphabet_size, int depth, std::vector<WordSet> elements);

  // The one-element cover {X}.
  static Cover trivial(int alphabet_size, int depth);
  // The partition into depth-d cylinders; depth 1 gives the time-zero
  // generating partition of the shift.
  static Cover cylinders(int alphabet_size, int depth);

  int alphabet_size() const { return alphabet_size_; }
  int depth() const { return depth_; }
  const std::vector<WordSet>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  bool is_partition() const;

 private:
  int alphabet_size_;
  int depth_;
  std::vector<WordSet> elements_;
};

// A cover whose elements are nonempty and pairwise disjoint.
class Partition : public Cover {
 public:
  explicit Partition(Cover cover);
};

// Element-set equality, ignoring order and repeats.
bool same_elements(const Cover& a, const Cover& b);

// U refines V: every element of U lies in some element of V. Depths must match.
bool refines(const Cover& u, const Cover& v);

// All nonempty pairwise intersections, U-major order.
Cover join(const Cover& u, const Cover& v);

// T^{-k}U at depth d + k: element i holds the words whose window at offset k is in U_i.
Cover pullback(const Cover& u, int k);

// Replace each element by all depth-D extensions of its members.
Cover lift_depth(const Cover& u, int depth);

// A (U, [0, n))-name: position j is assigned element `assignment[j]` of the base cover.
struct Name {
  std::vector<std::uint32_t> assignment;
  friend bool operator==(const Name&, const Name&) = default;
};

// U_0^{n-1}: names with nonempty realization in lexicographic order;
// names[i] realizes cover.elements()[i].
struct DynamicJoin {
  Cover cover;
  std::vector<Name> names;
};

struct DynJoinBudget {
  std::uint64_t max_candidate_names = std::uint64_t{1} << 24;
  // Bound on the total (name, word) incidences produced.
  std::uint64_t max_incidences = std::uint64_t{1} << 27;
};

// Throws CapacityError when |U|^n exceeds the candidate budget.
DynamicJoin dyn_join(const Cover& u, int n, const DynJoinBudget& budget = {});

}  // namespace coverent
