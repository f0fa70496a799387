#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coverent {

// Index of a depth-d word among the M^d words of that depth, read as a
// base-M number with the first symbol most significant. Appending a
// symbol maps index w to w * M + a.
using AtomIndex = std::uint64_t;

// M^d, throwing CapacityError if it does not fit in 63 bits.
AtomIndex atom_count(int alphabet_size, int depth);

// A finite word over {0, ..., M-1}.
struct Word {
  std::vector<std::uint8_t> symbols;

  std::size_t depth() const { return symbols.size(); }
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Parses a string of digit symbols ("0121"). Throws InvalidInput naming
// the word when it is empty or has a symbol outside the alphabet.
Word parse_word(std::string_view text, int alphabet_size);

AtomIndex word_index(const Word& w, int alphabet_size);
Word word_at(AtomIndex index, int depth, int alphabet_size);

// Stationary Markov measure on the full shift over M symbols.
class MarkovSystem {
 public:
  // Validates: entries >= 0, rows sum to 1 within 1e-12, stationary sums
  // to 1 and is invariant (pi P = pi) within 1e-10.
  MarkovSystem(int alphabet_size, std::vector<double> transition, std::vector<double> stationary);

  // Computes the stationary vector with stationary_of.
  static MarkovSystem from_matrix(const std::vector<std::vector<double>>& rows);
  // i.i.d. symbols with the given marginal.
  static MarkovSystem bernoulli(const std::vector<double>& probs);

  int alphabet_size() const { return alphabet_size_; }
  double transition(int from, int to) const { return transition_[from * alphabet_size_ + to]; }
  std::span<const double> transition_row(int from) const {
    return {transition_.data() + from * alphabet_size_, static_cast<std::size_t>(alphabet_size_)};
  }
  std::span<const double> stationary() const { return stationary_; }

  // Entropy rate -sum_a pi_a sum_b P_ab log2 P_ab, in bits.
  double entropy_rate() const;

 private:
  int alphabet_size_;
  std::vector<double> transition_;
  std::vector<double> stationary_;
};

// Unique stationary vector of a row-stochastic matrix by power iteration
// (tolerance 1e-13) from every unit vector; disagreeing limits mean the
// chain is reducible, and a limit that never settles means it is periodic.
// Both cases throw InvalidInput with a diagnostic.
std::vector<double> stationary_of(const std::vector<std::vector<double>>& rows);

// Finite convex combination of Markov measures over one alphabet.
class MixtureSystem {
 public:
  MixtureSystem(std::vector<MarkovSystem> components, std::vector<double> weights);

  int alphabet_size() const { return components_.front().alphabet_size(); }
  const std::vector<MarkovSystem>& components() const { return components_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<MarkovSystem> components_;
  std::vector<double> weights_;
};

// The measure every estimator consumes: a single chain or a mixture.
class ShiftMeasure {
 public:
  ShiftMeasure(MarkovSystem system);  // NOLINT(google-explicit-constructor)
  ShiftMeasure(MixtureSystem mixture);  // NOLINT(google-explicit-constructor)

  int alphabet_size() const { return mixture_.alphabet_size(); }
  bool is_mixture() const { return is_mixture_; }
  const MixtureSystem& mixture() const { return mixture_; }

  // Measures of all M^depth cylinders, indexed by AtomIndex.
  std::vector<double> cylinder_measures(int depth) const;

 private:
  MixtureSystem mixture_;
  bool is_mixture_;
};

double word_measure(const MarkovSystem& system, const Word& w);
double word_measure(const ShiftMeasure& system, const Word& w);

// Sum of word measures; all words must share one depth (InvalidInput otherwise).
double set_measure(const ShiftMeasure& system, std::span<const Word> words);

// Cylinder measures of one chain at a depth. Parallel over the words of
// each level; serial::cylinder_measures is the reference.
std::vector<double> cylinder_measures(const MarkovSystem& system, int depth);

// Orbit segment of length K; deterministic in the seed. Mixtures draw the
// component once, then run that chain.
Word sample_orbit(const ShiftMeasure& system, std::size_t length, std::uint64_t seed);

// The m-block system: states are the length-m words, transition is the
// m-step law, stationary law is the word measure. Block symbol index equals
// the word's AtomIndex.
MarkovSystem block_system(const MarkovSystem& system, int block_length);

}  // namespace coverent
