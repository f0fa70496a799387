#include "coverent/random_instances.hpp"

#include <cstdio>

namespace coverent {

MarkovSystem random_markov(Rng& rng, int m) {
  std::vector<std::vector<double>> rows(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      const bool required = j == i || j == (i + 1) % m;
      if (required || rng.uniform() >= 0.25) rows[i][j] = 0.05 + rng.uniform();
      total += rows[i][j];
    }
    for (auto& x : rows[i]) x /= total;
  }
  return MarkovSystem::from_matrix(rows);
}

Cover random_cover(Rng& rng, int m, int depth, int max_elements) {
  const auto atoms = atom_count(m, depth);
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_elements)));
  std::vector<std::vector<AtomIndex>> members(k);
  const double p = 0.2 + 0.5 * rng.uniform();
  for (AtomIndex w = 0; w < atoms; ++w) {
    bool placed = false;
    for (int e = 0; e < k; ++e) {
      if (rng.uniform() < p) {
        members[e].push_back(w);
        placed = true;
      }
    }
    if (!placed) members[rng.below(k)].push_back(w);
  }
  std::vector<WordSet> elements;
  for (auto& e : members) {
    if (e.empty()) e.push_back(rng.below(atoms));
    elements.emplace_back(m, depth, std::move(e));
  }
  return Cover(m, depth, std::move(elements));
}

Cover random_partition(Rng& rng, int m, int depth, int max_blocks) {
  const auto atoms = atom_count(m, depth);
  const auto k = std::min<AtomIndex>(atoms, 1 + rng.below(static_cast<std::uint64_t>(max_blocks)));
  std::vector<std::vector<AtomIndex>> blocks(k);
  // The first k words seed one block each so none is empty.
  for (AtomIndex w = 0; w < atoms; ++w) blocks[w < k ? w : rng.below(k)].push_back(w);
  std::vector<WordSet> elements;
  for (auto& b : blocks) elements.emplace_back(m, depth, std::move(b));
  return Cover(m, depth, std::move(elements));
}

std::string describe(const Cover& cover) {
  std::string s = "M=" + std::to_string(cover.alphabet_size()) + " d=" + std::to_string(cover.depth()) + " {";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (i) s += ",";
    s += "{";
    const auto words = cover.elements()[i].words();
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (j) s += ",";
      s += words[j].str();
    }
    s += "}";
  }
  return s + "}";
}

std::string describe(const MarkovSystem& system) {
  const int m = system.alphabet_size();
  std::string s = "P=[";
  char buf[40];
  for (int i = 0; i < m; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < m; ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g", j ? "," : "", system.transition(i, j));
      s += buf;
    }
    s += "]";
  }
  return s + "]";
}

IntervalFamily periodic_family(Rng& rng, std::int64_t k, const std::vector<std::int64_t>& lengths,
                               const std::vector<double>& lambda, double epsilon, double eta) {
  IntervalFamily fam;
  fam.horizon = k;
  fam.epsilon = epsilon;
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    IntervalLevel lv;
    lv.length = lengths[j];
    lv.density = lambda[j];
    lv.eta = eta;
    const double period = static_cast<double>(lengths[j]) / lambda[j];
    const double phase = rng.uniform() * period;
    for (double s = phase; s + static_cast<double>(lengths[j]) <= static_cast<double>(k); s += period) {
      const auto start = static_cast<std::int64_t>(s);
      if (!lv.starts.empty() && start <= lv.starts.back() + lv.length) continue;
      lv.starts.push_back(start);
    }
    fam.levels.push_back(std::move(lv));
  }
  return fam;
}

}  // namespace coverent
