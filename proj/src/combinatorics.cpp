#include "coverent/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string_view>
#include <unordered_set>

#include "coverent/errors.hpp"

namespace coverent {

double binary_entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidInput("binary_entropy argument outside [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

BinomialTail binom_tail(int k, double delta) {
  if (k < 0) throw InvalidInput("binom_tail needs K >= 0");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidInput("binom_tail delta outside [0, 1]");
  // floor(delta K), robust to 0.2 * 10 landing a hair under 2.
  const int jmax = std::min(k, static_cast<int>(std::floor(delta * k + 1e-9)));
  BigInt term = 1;
  BigInt sum = 0;
  for (int j = 0; j <= jmax; ++j) {
    sum += term;
    term = term * (k - j) / (j + 1);
  }
  return {sum, std::exp2(binary_entropy(delta) * k)};
}

void validate(const IntervalFamily& family) {
  if (family.horizon < 1) throw InvalidInput("interval family horizon must be >= 1");
  if (family.levels.empty()) throw InvalidInput("interval family has no levels");
  if (!(family.epsilon > 0.0)) throw InvalidInput("interval family epsilon must be > 0");
  std::int64_t prev = 0;
  for (std::size_t j = 0; j < family.levels.size(); ++j) {
    const auto& lv = family.levels[j];
    if (lv.length <= prev) throw InvalidInput("interval lengths must be strictly increasing across levels");
    prev = lv.length;
    if (!(lv.density >= 0.0 && lv.density < 1.0)) throw InvalidInput("level density must lie in [0, 1)");
    if (!(lv.eta > 0.0)) throw InvalidInput("level eta must be > 0");
    for (std::size_t i = 0; i < lv.starts.size(); ++i) {
      const auto s = lv.starts[i];
      if (s < 0 || s + lv.length > family.horizon) {
        throw InvalidInput("interval at " + std::to_string(s) + " of level " + std::to_string(j) + " leaves [0, K)");
      }
      if (i > 0 && s <= lv.starts[i - 1] + lv.length) {
        throw InvalidInput("level " + std::to_string(j) + " is not a separated collection near " + std::to_string(s));
      }
    }
  }
}

NuVector::NuVector(std::vector<double> lambda) : lambda_(std::move(lambda)), nu_(lambda_.size() + 1, 1.0) {
  for (double x : lambda_) {
    if (!(x >= 0.0 && x < 1.0)) throw InvalidInput("lambda entries must lie in [0, 1)");
  }
  for (std::size_t r = lambda_.size(); r-- > 0;) nu_[r] = nu_[r + 1] * (1.0 - lambda_[r]);
}

bool check_separated(std::vector<std::pair<std::int64_t, std::int64_t>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    const auto prev_end = intervals[i - 1].first + intervals[i - 1].second;  // one past the last position
    if (intervals[i].first <= prev_end) return false;
  }
  return true;
}

HypothesisReport check_hypotheses(const IntervalFamily& family) {
  HypothesisReport rep;
  const auto k = family.horizon;
  const auto l = family.levels.size();
  const double kd = static_cast<double>(k);
  for (std::size_t j = 0; j < l; ++j) {
    const auto& lv = family.levels[j];
    const double err =
        std::abs(static_cast<double>(lv.length) * static_cast<double>(lv.starts.size()) / kd - lv.density);
    rep.density_error.push_back(err);
    if (!(err < family.epsilon)) {
      rep.densities_ok = false;
      std::ostringstream os;
      os << "level " << j << " covers a fraction off lambda by " << err << " >= epsilon";
      rep.warnings.push_back(os.str());
    }
  }
  for (std::size_t r = 1; r < l; ++r) {
    const auto& outer = family.levels[r];
    for (std::size_t j = 0; j < r; ++j) {
      const auto& inner = family.levels[j];
      // prefix[x] = number of level-j starts below x
      std::vector<std::int64_t> prefix(static_cast<std::size_t>(k) + 1, 0);
      for (auto s : inner.starts) prefix[static_cast<std::size_t>(s) + 1] += 1;
      for (std::int64_t x = 0; x < k; ++x) prefix[x + 1] += prefix[x];
      std::int64_t bad = 0;
      const auto span = outer.length - inner.length;  // starts in [s, s + span] fit inside the window
      for (std::int64_t s = 0; s + outer.length <= k; ++s) {
        const auto inside = prefix[s + span + 1] - prefix[s];
        const double frac =
            static_cast<double>(inside * inner.length) / static_cast<double>(outer.length);
        if (!(std::abs(frac - inner.density) < family.epsilon)) ++bad;
      }
      rep.bad_windows.push_back(bad);
      if (!(static_cast<double>(bad) < outer.eta * kd)) {
        rep.windows_ok = false;
        std::ostringstream os;
        os << bad << " windows of length " << outer.length << " are badly covered by level " << j
           << " (limit eta K = " << outer.eta * kd << ")";
        rep.warnings.push_back(os.str());
      }
    }
  }
  return rep;
}

std::vector<double> separation_error_terms(std::span<const std::int64_t> lengths, std::span<const double> etas,
                                           double epsilon) {
  const auto l = lengths.size();
  std::vector<double> f(l, 0.0);
  if (l == 0) return f;
  f[l - 1] = epsilon;
  for (std::size_t j = l - 1; j-- > 0;) {
    const double nj = static_cast<double>(lengths[j]);
    double below = epsilon;
    double above = epsilon;
    for (std::size_t r = j + 1; r < l; ++r) {
      const double nr = static_cast<double>(lengths[r]);
      below += epsilon + (1.0 + epsilon) * f[r] + 2.0 * (nj / nr) * (1.0 + f[r]) + etas[r] * (nr + 2.0 * nj);
      above += f[r] + epsilon * (1.0 + f[r]) + etas[r] * nr * (1.0 + epsilon);
    }
    f[j] = std::max(below, above);
  }
  return f;
}

Extraction extract_separated(const IntervalFamily& family) {
  validate(family);
  Extraction out;
  out.hypotheses = check_hypotheses(family);
  const auto k = family.horizon;
  const auto l = family.levels.size();

  std::vector<std::int64_t> lengths;
  std::vector<double> etas;
  for (const auto& lv : family.levels) {
    lengths.push_back(lv.length);
    etas.push_back(lv.eta);
  }
  out.f = separation_error_terms(lengths, etas, family.epsilon);
  for (double x : out.f) out.phi += x;

  out.selected.resize(l);
  std::vector<char> taken(static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(k) + 1, 0);
  auto mark = [&](std::size_t j) {
    for (auto s : out.selected[j]) {
      std::fill(taken.begin() + s, taken.begin() + s + family.levels[j].length, 1);
    }
    for (std::int64_t x = 0; x < k; ++x) prefix[x + 1] = prefix[x] + taken[x];
  };

  out.selected[l - 1] = family.levels[l - 1].starts;
  mark(l - 1);
  for (std::size_t j = l - 1; j-- > 0;) {
    const auto n = family.levels[j].length;
    for (auto s : family.levels[j].starts) {
      // The interval together with one free position on each side.
      const auto lo = std::max<std::int64_t>(0, s - 1);
      const auto hi = std::min<std::int64_t>(k, s + n + 1);
      if (prefix[hi] - prefix[lo] == 0) out.selected[j].push_back(s);
    }
    mark(j);
  }
  out.covered_fraction = static_cast<double>(prefix[k]) / static_cast<double>(k);
  return out;
}

void validate(const Packing& p) {
  if (p.n < 1 || p.k < p.n) throw InvalidInput("packing needs 1 <= n <= k");
  if (p.positions.size() != p.blocks.size()) throw InvalidInput("packing positions and blocks differ in count");
  if (p.positions.empty()) throw InvalidInput("packing has no blocks");
  for (std::size_t j = 0; j < p.positions.size(); ++j) {
    const int i = p.positions[j];
    if (i < 0 || i > p.k - p.n) throw InvalidInput("packing position out of range");
    if (j > 0 && p.positions[j - 1] + p.n - 1 >= i) throw InvalidInput("packing blocks overlap");
  }
  const double fill = static_cast<double>(p.positions.size()) * p.n / p.k;
  if (!(fill > 1.0 - p.delta)) throw InvalidInput("packing fills no more than 1 - delta of the word");
}

std::vector<double> packing_distribution(const Packing& p, int alphabet_size) {
  if (p.blocks.empty()) throw InvalidInput("packing has no blocks");
  std::vector<double> dist(atom_count(alphabet_size, p.n), 0.0);
  for (auto b : p.blocks) dist.at(b) += 1.0;
  for (double& x : dist) x /= static_cast<double>(p.blocks.size());
  return dist;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("distributions over different block sets");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

namespace {

class PackingSearch {
 public:
  PackingSearch(const Word& word, int alphabet_size, int n, double delta, std::span<const double> mu)
      : word_(word), m_(alphabet_size), n_(n), k_(static_cast<int>(word.depth())), delta_(delta), mu_(mu),
        counts_(mu.size(), 0) {
    block_at_.resize(static_cast<std::size_t>(k_ - n_ + 1));
    for (int i = 0; i + n_ <= k_; ++i) {
      AtomIndex b = 0;
      for (int t = 0; t < n_; ++t) b = b * static_cast<AtomIndex>(m_) + word_.symbols[i + t];
      block_at_[i] = b;
    }
  }

  PackedDecision run() {
    if (dfs(0, 0)) {
      Packing p{n_, k_, delta_, positions_, blocks_};
      return {true, std::move(p)};
    }
    return {false, std::nullopt};
  }

 private:
  bool fill_ok(int placed) const {
    return static_cast<double>(placed) * n_ / k_ > 1.0 - delta_;
  }

  bool dfs(int p, int placed) {
    // Letters skipped so far can only grow.
    const int skipped = p - placed * n_;
    if (!(static_cast<double>(k_ - skipped) / k_ > 1.0 - delta_)) return false;
    if (p > k_ - n_) return leaf(placed);

    std::string key = std::to_string(p) + ":";
    for (auto c : counts_) key.append(std::to_string(c)).push_back(',');
    if (failed_.count(key)) return false;

    const auto b = block_at_[p];
    ++counts_[b];
    positions_.push_back(p);
    blocks_.push_back(b);
    if (dfs(p + n_, placed + 1)) return true;
    --counts_[b];
    positions_.pop_back();
    blocks_.pop_back();

    if (dfs(p + 1, placed)) return true;
    failed_.insert(std::move(key));
    return false;
  }

  bool leaf(int placed) const {
    if (placed == 0 || !fill_ok(placed)) return false;
    double d = 0.0;
    for (std::size_t g = 0; g < mu_.size(); ++g) {
      d = std::max(d, std::abs(static_cast<double>(counts_[g]) / placed - mu_[g]));
    }
    return d < delta_;
  }

  const Word& word_;
  int m_, n_, k_;
  double delta_;
  std::span<const double> mu_;
  std::vector<AtomIndex> block_at_;
  std::vector<int> counts_;
  std::vector<int> positions_;
  std::vector<AtomIndex> blocks_;
  std::unordered_set<std::string> failed_;
};

void check_block_distribution(std::span<const double> mu, int alphabet_size, int n) {
  if (mu.size() != atom_count(alphabet_size, n)) throw InvalidInput("block distribution must have M^n entries");
  double total = 0.0;
  for (double x : mu) {
    if (!(x >= 0.0)) throw InvalidInput("block distribution has a negative entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("block distribution does not sum to 1");
}

}  // namespace

PackedDecision is_word_packed(const Word& word, int alphabet_size, int n, double delta, std::span<const double> mu) {
  if (n < 1 || static_cast<int>(word.depth()) < n) throw InvalidInput("is_word_packed needs 1 <= n <= k");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  check_block_distribution(mu, alphabet_size, n);
  return PackingSearch(word, alphabet_size, n, delta, mu).run();
}

double average_block_entropy(std::span<const double> mu, int n) {
  double h = 0.0;
  for (double x : mu) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h / n;
}

double packing_phi(std::span<const double> mu, int n, int alphabet_size, double delta) {
  double modulus = 0.0;
  for (double x : mu) {
    if (x > 0.0) modulus += std::abs(std::log2(x));
  }
  const double psi = delta * modulus;
  return psi / n + binary_entropy(delta) + delta * std::log2(static_cast<double>(alphabet_size));
}

Census packing_census(int alphabet_size, int n, int k, double delta, std::span<const double> mu,
                      const CensusBudget& budget) {
  if (n < 1 || k < n) throw InvalidInput("packing_census needs 1 <= n <= k");
  check_block_distribution(mu, alphabet_size, n);
  const double bits = k * std::log2(static_cast<double>(alphabet_size));
  if (bits > budget.max_bits) {
    throw CapacityError("packing_census: M^k = 2^" + std::to_string(bits) + " words exceed the enumeration budget");
  }
  const auto words = static_cast<std::int64_t>(atom_count(alphabet_size, k));
  std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : count)
  for (std::int64_t w = 0; w < words; ++w) {
    const auto word = word_at(static_cast<AtomIndex>(w), k, alphabet_size);
    if (PackingSearch(word, alphabet_size, n, delta, mu).run().packed) ++count;
  }
  const double h0 = average_block_entropy(mu, n);
  return {count, std::exp2(k * (h0 + packing_phi(mu, n, alphabet_size, delta)))};
}

std::vector<std::int64_t> visit_intervals(const Word& orbit, const WordSet& base, std::int64_t length) {
  const int d = base.depth();
  if (d > length) throw InvalidInput("visit_intervals: base depth exceeds the interval length");
  const auto k = static_cast<std::int64_t>(orbit.depth());
  std::vector<std::int64_t> starts;
  if (base.empty()) return starts;
  const auto m = static_cast<AtomIndex>(base.alphabet_size());
  for (std::int64_t s = 0; s + length <= k; ++s) {
    AtomIndex w = 0;
    for (int t = 0; t < d; ++t) w = w * m + orbit.symbols[static_cast<std::size_t>(s + t)];
    if (base.contains(w)) starts.push_back(s);
  }
  return starts;
}

}  // namespace coverent
