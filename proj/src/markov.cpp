#include "coverent/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coverent/errors.hpp"
#include "coverent/parallel.hpp"

namespace coverent {
namespace {

constexpr double kRowTolerance = 1e-12;
constexpr double kStationaryTolerance = 1e-10;
constexpr double kPowerTolerance = 1e-13;
constexpr int kPowerIterations = 1'000'000;

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 10) {
    throw InvalidInput("alphabet size must be in [2, 10], got " + std::to_string(alphabet_size));
  }
}

void check_stochastic(int m, const std::vector<double>& p) {
  for (int i = 0; i < m; ++i) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double v = p[i * m + j];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidInput("transition entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is negative or not finite");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      std::ostringstream os;
      os << "transition row " << i << " sums to " << sum << ", not 1";
      throw InvalidInput(os.str());
    }
  }
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  std::vector<double> flat;
  flat.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m) throw InvalidInput("transition matrix is not square");
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return flat;
}

}  // namespace

AtomIndex atom_count(int alphabet_size, int depth) {
  if (depth < 0) throw InvalidInput("negative depth");
  AtomIndex n = 1;
  for (int i = 0; i < depth; ++i) {
    if (n > (AtomIndex{1} << 62) / static_cast<AtomIndex>(alphabet_size)) {
      throw CapacityError("M^depth overflows for M=" + std::to_string(alphabet_size) +
                          ", depth=" + std::to_string(depth));
    }
    n *= static_cast<AtomIndex>(alphabet_size);
  }
  return n;
}

std::string Word::str() const {
  std::string s;
  s.reserve(symbols.size());
  for (auto a : symbols) s.push_back(static_cast<char>('0' + a));
  return s;
}

Word parse_word(std::string_view text, int alphabet_size) {
  if (text.empty()) throw InvalidInput("empty word \"\"");
  Word w;
  w.symbols.reserve(text.size());
  for (char c : text) {
    const int a = c - '0';
    if (c < '0' || c > '9' || a >= alphabet_size) {
      throw InvalidInput("invalid word \"" + std::string(text) + "\" for alphabet of size " +
                         std::to_string(alphabet_size));
    }
    w.symbols.push_back(static_cast<std::uint8_t>(a));
  }
  return w;
}

AtomIndex word_index(const Word& w, int alphabet_size) {
  AtomIndex idx = 0;
  for (auto a : w.symbols) idx = idx * static_cast<AtomIndex>(alphabet_size) + a;
  return idx;
}

Word word_at(AtomIndex index, int depth, int alphabet_size) {
  Word w;
  w.symbols.resize(static_cast<std::size_t>(depth));
  for (int i = depth - 1; i >= 0; --i) {
    w.symbols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % alphabet_size);
    index /= static_cast<AtomIndex>(alphabet_size);
  }
  return w;
}

MarkovSystem::MarkovSystem(int alphabet_size, std::vector<double> transition,
                           std::vector<double> stationary)
    : alphabet_size_(alphabet_size),
      transition_(std::move(transition)),
      stationary_(std::move(stationary)) {
  check_alphabet(alphabet_size_);
  const auto m = static_cast<std::size_t>(alphabet_size_);
  if (transition_.size() != m * m) throw InvalidInput("transition matrix has wrong size");
  if (stationary_.size() != m) throw InvalidInput("stationary vector has wrong size");
  check_stochastic(alphabet_size_, transition_);
  double total = 0.0;
  for (double v : stationary_) {
    if (!(v >= 0.0)) throw InvalidInput("stationary vector has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kStationaryTolerance) throw InvalidInput("stationary vector does not sum to 1");
  for (std::size_t j = 0; j < m; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < m; ++i) v += stationary_[i] * transition_[i * m + j];
    if (std::abs(v - stationary_[j]) > kStationaryTolerance) {
      throw InvalidInput("stationary vector is not invariant under the transition matrix");
    }
  }
}

MarkovSystem MarkovSystem::from_matrix(const std::vector<std::vector<double>>& rows) {
  auto pi = stationary_of(rows);
  return MarkovSystem(static_cast<int>(rows.size()), flatten(rows), std::move(pi));
}

MarkovSystem MarkovSystem::bernoulli(const std::vector<double>& probs) {
  const int m = static_cast<int>(probs.size());
  check_alphabet(m);
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InvalidInput("bernoulli probability is negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kRowTolerance) throw InvalidInput("bernoulli probabilities do not sum to 1");
  std::vector<double> transition;
  transition.reserve(probs.size() * probs.size());
  for (int i = 0; i < m; ++i) transition.insert(transition.end(), probs.begin(), probs.end());
  return MarkovSystem(m, std::move(transition), probs);
}

double MarkovSystem::entropy_rate() const {
  double h = 0.0;
  for (int a = 0; a < alphabet_size_; ++a) {
    for (int b = 0; b < alphabet_size_; ++b) {
      const double p = transition(a, b);
      if (p > 0.0) h -= stationary_[a] * p * std::log2(p);
    }
  }
  return h;
}

std::vector<double> stationary_of(const std::vector<std::vector<double>>& rows) {
  const int m = static_cast<int>(rows.size());
  check_alphabet(m);
  const auto p = flatten(rows);
  check_stochastic(m, p);

  std::vector<std::vector<double>> limits;
  for (int start = 0; start < m; ++start) {
    std::vector<double> v(m, 0.0), next(m);
    v[start] = 1.0;
    bool converged = false;
    for (int it = 0; it < kPowerIterations; ++it) {
      std::fill(next.begin(), next.end(), 0.0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) next[j] += v[i] * p[i * m + j];
      }
      double delta = 0.0;
      for (int j = 0; j < m; ++j) delta = std::max(delta, std::abs(next[j] - v[j]));
      v.swap(next);
      if (delta < kPowerTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw InvalidInput("power iteration from state " + std::to_string(start) +
                         " did not settle: chain is periodic (no aperiodic stationary limit)");
    }
    limits.push_back(std::move(v));
  }
  for (int s = 1; s < m; ++s) {
    for (int j = 0; j < m; ++j) {
      if (std::abs(limits[s][j] - limits[0][j]) > kStationaryTolerance) {
        throw InvalidInput("chain is reducible: starting states 0 and " + std::to_string(s) +
                           " reach different stationary vectors");
      }
    }
  }
  auto pi = limits.front();
  const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& x : pi) x /= total;
  return pi;
}

MixtureSystem::MixtureSystem(std::vector<MarkovSystem> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  if (components_.empty()) throw InvalidInput("mixture has no components");
  if (components_.size() != weights_.size()) throw InvalidInput("mixture weights and components differ in count");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvalidInput("mixture weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kRowTolerance) throw InvalidInput("mixture weights do not sum to 1");
  for (const auto& c : components_) {
    if (c.alphabet_size() != components_.front().alphabet_size()) {
      throw InvalidInput("mixture components use different alphabets");
    }
  }
}

ShiftMeasure::ShiftMeasure(MarkovSystem system)
    : mixture_({std::move(system)}, {1.0}), is_mixture_(false) {}

ShiftMeasure::ShiftMeasure(MixtureSystem mixture) : mixture_(std::move(mixture)), is_mixture_(true) {}

std::vector<double> cylinder_measures(const MarkovSystem& system, int depth) {
  const int m = system.alphabet_size();
  std::vector<double> level(system.stationary().begin(), system.stationary().end());
  if (depth == 0) return {1.0};
  for (int d = 1; d < depth; ++d) {
    const auto count = static_cast<std::int64_t>(level.size());
    std::vector<double> next(level.size() * static_cast<std::size_t>(m));
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < count; ++w) {
      const int last = static_cast<int>(w % m);
      for (int a = 0; a < m; ++a) next[static_cast<std::size_t>(w * m + a)] = level[w] * system.transition(last, a);
    }
    level.swap(next);
  }
  return level;
}

std::vector<double> ShiftMeasure::cylinder_measures(int depth) const {
  const auto& comps = mixture_.components();
  if (comps.size() == 1) return coverent::cylinder_measures(comps.front(), depth);
  std::vector<double> total(atom_count(alphabet_size(), depth), 0.0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto part = coverent::cylinder_measures(comps[c], depth);
    const double w = mixture_.weights()[c];
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += w * part[i];
  }
  return total;
}

double word_measure(const MarkovSystem& system, const Word& w) {
  if (w.depth() == 0) throw InvalidInput("empty word");
  for (auto a : w.symbols) {
    if (a >= system.alphabet_size()) throw InvalidInput("word \"" + w.str() + "\" has a symbol outside the alphabet");
  }
  double p = system.stationary()[w.symbols[0]];
  for (std::size_t i = 0; i + 1 < w.depth(); ++i) p *= system.transition(w.symbols[i], w.symbols[i + 1]);
  return p;
}

double word_measure(const ShiftMeasure& system, const Word& w) {
  const auto& mix = system.mixture();
  double p = 0.0;
  for (std::size_t c = 0; c < mix.components().size(); ++c) {
    p += mix.weights()[c] * word_measure(mix.components()[c], w);
  }
  return p;
}

double set_measure(const ShiftMeasure& system, std::span<const Word> words) {
  if (words.empty()) return 0.0;
  const auto depth = words.front().depth();
  double total = 0.0;
  for (const auto& w : words) {
    if (w.depth() != depth) throw InvalidInput("word set mixes depths " + std::to_string(depth) + " and " + std::to_string(w.depth()));
    total += word_measure(system, w);
  }
  return total;
}

namespace {

int draw(std::span<const double> probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Roundoff at the top of the range: fall back to the last positive entry.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return static_cast<int>(i);
  }
  return 0;
}

}  // namespace

Word sample_orbit(const ShiftMeasure& system, std::size_t length, std::uint64_t seed) {
  if (length == 0) throw InvalidInput("orbit length must be >= 1");
  Rng rng(derive_seed(seed, "sample_orbit"));
  const auto& mix = system.mixture();
  const auto& chain = mix.components()[static_cast<std::size_t>(draw(mix.weights(), rng.uniform()))];
  Word w;
  w.symbols.resize(length);
  int state = draw(chain.stationary(), rng.uniform());
  w.symbols[0] = static_cast<std::uint8_t>(state);
  for (std::size_t i = 1; i < length; ++i) {
    state = draw(chain.transition_row(state), rng.uniform());
    w.symbols[i] = static_cast<std::uint8_t>(state);
  }
  return w;
}

MarkovSystem block_system(const MarkovSystem& system, int block_length) {
  if (block_length < 1) throw InvalidInput("block length must be >= 1");
  const int m = system.alphabet_size();
  const auto states = atom_count(m, block_length);
  if (states > 10) throw InvalidInput("block alphabet M^m must be <= 10");
  const auto s = static_cast<std::size_t>(states);
  auto stationary = cylinder_measures(system, block_length);
  std::vector<double> transition(s * s);
  for (std::size_t u = 0; u < s; ++u) {
    const int last = static_cast<int>(u % static_cast<std::size_t>(m));
    for (std::size_t v = 0; v < s; ++v) {
      const Word word = word_at(v, block_length, m);
      double p = system.transition(last, word.symbols[0]);
      for (int i = 0; i + 1 < block_length; ++i) p *= system.transition(word.symbols[i], word.symbols[i + 1]);
      transition[u * s + v] = p;
    }
  }
  return MarkovSystem(static_cast<int>(states), std::move(transition), std::move(stationary));
}

}  // namespace coverent
