#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coverent/cover.hpp"
#include "coverent/markov.hpp"

namespace coverent {

using BigInt = boost::multiprecision::cpp_int;

// H(d) = -d log2 d - (1-d) log2 (1-d); 0 at the endpoints. Throws
// InvalidInput outside [0, 1].
double binary_entropy(double delta);

struct BinomialTail {
  BigInt exact;  // sum_{j <= delta K} C(K, j)
  double bound;  // 2^{H(delta) K}
};

BinomialTail binom_tail(int k, double delta);

// ---------------------------------------------------------------------------
// Separated interval families.
//
// Intervals are half-open integer ranges [start, start + length) inside
// [0, K). Two intervals are separated when some integer lies strictly
// between them, i.e. there is a gap of at least one position.

struct IntervalLevel {
  std::int64_t length = 0;           // N_j
  std::vector<std::int64_t> starts;  // A_j, ascending
  double density = 0.0;              // lambda_j
  double eta = 0.0;                  // eta_j
};

struct IntervalFamily {
  std::int64_t horizon = 0;  // K
  double epsilon = 0.0;
  std::vector<IntervalLevel> levels;  // level 0 holds the shortest intervals
};

// Throws InvalidInput when levels are not strictly increasing in length,
// an interval leaves [0, K), or a level is not itself separated.
void validate(const IntervalFamily& family);

// nu_r = prod_{j >= r} (1 - lambda_j) for 0-based r; nu_l = 1.
class NuVector {
 public:
  explicit NuVector(std::vector<double> lambda);

  std::size_t levels() const { return lambda_.size(); }
  double lambda(std::size_t j) const { return lambda_[j]; }
  // r in [0, levels()]; nu(levels()) == 1.
  double nu(std::size_t r) const { return nu_[r]; }

 private:
  std::vector<double> lambda_;
  std::vector<double> nu_;
};

// True when every pair of intervals in the list is separated.
bool check_separated(std::vector<std::pair<std::int64_t, std::int64_t>> intervals);

struct HypothesisReport {
  bool lengths_ok = true;          // (a)
  std::vector<double> density_error;  // (b): | N_j |A_j| / K - lambda_j | per level
  bool densities_ok = true;
  // (c): bad-window counts for level pairs j < r, row-major over r.
  std::vector<std::int64_t> bad_windows;
  bool windows_ok = true;
  std::vector<std::string> warnings;
};

HypothesisReport check_hypotheses(const IntervalFamily& family);

struct Extraction {
  std::vector<std::vector<std::int64_t>> selected;  // per level, ascending
  double covered_fraction = 0.0;                     // |union| / K
  std::vector<double> f;                             // per-level error terms
  double phi = 0.0;                                  // sum of f
  HypothesisReport hypotheses;
};

// Error terms of the recursion: f for the top level is epsilon; lower
// levels take the max of the from-below and from-above estimates.
std::vector<double> separation_error_terms(std::span<const std::int64_t> lengths, std::span<const double> etas,
                                           double epsilon);

// Keep every top-level interval, then walk down the levels keeping an
// interval when it is separated from everything kept above it.
Extraction extract_separated(const IntervalFamily& family);

// ---------------------------------------------------------------------------
// Packings.

// Blocks are words of length n, indexed by AtomIndex over an alphabet of
// size M; a distribution on blocks is a vector of size M^n.
struct Packing {
  int n = 0;
  int k = 0;
  double delta = 0.0;
  std::vector<int> positions;        // i_0 < ... < i_{m-1}
  std::vector<AtomIndex> blocks;     // gamma_j
};

// Throws InvalidInput unless 0 <= i_j <= k - n, blocks do not overlap,
// and m n / k > 1 - delta.
void validate(const Packing& packing);

std::vector<double> packing_distribution(const Packing& packing, int alphabet_size);

// max_gamma |a(gamma) - b(gamma)|
double sup_distance(std::span<const double> a, std::span<const double> b);

struct PackedDecision {
  bool packed = false;
  std::optional<Packing> witness;
};

// Decides by exhaustive memoized search whether the word admits an
// (n, k, delta)-packing whose block distribution is within delta of mu.
PackedDecision is_word_packed(const Word& word, int alphabet_size, int n, double delta, std::span<const double> mu);

// -(1/n) sum mu log2 mu
double average_block_entropy(std::span<const double> mu, int n);

// psi(delta)/n + H(delta) + delta log2 M with psi(delta) = delta sum_{mu > 0} |log2 mu|.
double packing_phi(std::span<const double> mu, int n, int alphabet_size, double delta);

struct Census {
  std::uint64_t count = 0;
  double bound = 0.0;  // 2^{k (h0 + phi(delta))}
};

struct CensusBudget {
  double max_bits = 24.0;  // k log2 M
};

// Exhaustive count of packed words in Lambda^k, parallel over words.
Census packing_census(int alphabet_size, int n, int k, double delta, std::span<const double> mu,
                      const CensusBudget& budget = {});

// ---------------------------------------------------------------------------

// Positions m in [0, K - length] whose window of the base's depth lies in
// the base set.
std::vector<std::int64_t> visit_intervals(const Word& orbit, const WordSet& base, std::int64_t length);

}  // namespace coverent
