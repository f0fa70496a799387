#pragma once

// Seeded random systems and covers shared by the verification suites, the
// property tests and the benchmarks.

#include <string>

#include "coverent/combinatorics.hpp"
#include "coverent/cover.hpp"
#include "coverent/markov.hpp"
#include "coverent/parallel.hpp"

namespace coverent {

// Irreducible aperiodic chain: positive diagonal and a positive cycle
// 0 -> 1 -> ... -> 0, other entries zero with probability 1/4.
MarkovSystem random_markov(Rng& rng, int alphabet_size);

// Between 1 and max_elements nonempty elements; uncovered words are
// dropped into random elements so the union is everything.
Cover random_cover(Rng& rng, int alphabet_size, int depth, int max_elements);

// Random partition into at most max_blocks nonempty blocks.
Cover random_partition(Rng& rng, int alphabet_size, int depth, int max_blocks);

// Each level j evenly spaced with period N_j / lambda_j from a random phase;
// starts that would touch the previous interval are skipped.
IntervalFamily periodic_family(Rng& rng, std::int64_t k, const std::vector<std::int64_t>& lengths,
                               const std::vector<double>& lambda, double epsilon, double eta);

// One-line renderings used in failure reports: {{00,01},{10,11}} and
// P=[[...]] with round-trippable numbers.
std::string describe(const Cover& cover);
std::string describe(const MarkovSystem& system);

}  // namespace coverent
