#include "coverent/serial.hpp"

#include <algorithm>
#include <limits>

#include "coverent/combinatorics.hpp"
#include "coverent/errors.hpp"

namespace coverent::serial {

std::vector<double> cylinder_measures(const MarkovSystem& system, int depth) {
  const int m = system.alphabet_size();
  const auto atoms = atom_count(m, depth);
  std::vector<double> out(atoms);
  for (AtomIndex w = 0; w < atoms; ++w) out[w] = word_measure(system, word_at(w, depth, m));
  return out;
}

DynamicJoin dyn_join(const Cover& u, int n) {
  if (n < 1) throw InvalidInput("dyn_join horizon must be >= 1");
  const int m = u.alphabet_size();
  const int d = u.depth();
  const int depth = n + d - 1;
  const auto k = static_cast<std::uint32_t>(u.size());
  const auto atoms = atom_count(m, depth);

  DynamicJoin out{Cover::trivial(m, depth), {}};
  std::vector<WordSet> elements;
  std::vector<std::uint32_t> f(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<AtomIndex> members;
    for (AtomIndex w = 0; w < atoms; ++w) {
      const auto word = word_at(w, depth, m);
      bool in = true;
      for (int j = 0; j < n && in; ++j) {
        Word window;
        window.symbols.assign(word.symbols.begin() + j, word.symbols.begin() + j + d);
        in = u.elements()[f[j]].contains(word_index(window, m));
      }
      if (in) members.push_back(w);
    }
    if (!members.empty()) {
      elements.emplace_back(m, depth, std::move(members));
      out.names.push_back({f});
    }
    int j = n - 1;
    while (j >= 0 && ++f[j] == k) f[j--] = 0;
    if (j < 0) break;
  }
  out.cover = Cover(m, depth, std::move(elements));
  return out;
}

FreeSearchResult exact_free_search(const AssignmentSpace& space) {
  const auto f = space.free_atoms.size();
  std::vector<std::size_t> digit(f, 0);
  std::vector<std::uint32_t> choice(f);
  FreeSearchResult best{std::numeric_limits<double>::infinity(), {}};
  while (true) {
    for (std::size_t i = 0; i < f; ++i) choice[i] = space.eligible[i][digit[i]];
    const double h = assignment_entropy(space, choice);
    if (h < best.bits - 1e-12) best = {h, choice};
    std::size_t i = f;
    while (i > 0 && ++digit[i - 1] == space.eligible[i - 1].size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

double min_assignment_entropy(std::span<const double> cylinder, const Cover& cover, int depth,
                              std::uint64_t max_assignments) {
  const auto lifted = lift_depth(cover, depth);
  std::vector<AtomIndex> words;
  std::vector<std::vector<std::uint32_t>> holders;
  std::uint64_t total = 1;
  for (AtomIndex w = 0; w < cylinder.size(); ++w) {
    if (cylinder[w] <= 0.0) continue;
    std::vector<std::uint32_t> h;
    for (std::uint32_t i = 0; i < lifted.size(); ++i) {
      if (lifted.elements()[i].contains(w)) h.push_back(i);
    }
    total *= h.size();
    if (total > max_assignments) throw CapacityError("serial assignment enumeration too large");
    words.push_back(w);
    holders.push_back(std::move(h));
  }
  std::vector<std::size_t> digit(words.size(), 0);
  std::vector<double> masses(lifted.size());
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::fill(masses.begin(), masses.end(), 0.0);
    for (std::size_t i = 0; i < words.size(); ++i) masses[holders[i][digit[i]]] += cylinder[words[i]];
    best = std::min(best, shannon_bits(masses));
    std::size_t i = words.size();
    while (i > 0 && ++digit[i - 1] == holders[i - 1].size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

CoverSolution n_exact(const CoverInstance& inst) {
  validate(inst);
  const auto s = static_cast<std::uint32_t>(inst.sets.size());
  for (std::uint32_t size = 1; size <= s; ++size) {
    std::vector<std::uint32_t> pick(size);
    for (std::uint32_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      if (meets_target(inst, pick)) return {size, pick, Method::exact};
      int i = static_cast<int>(size) - 1;
      while (i >= 0 && pick[i] == s - size + static_cast<std::uint32_t>(i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (auto j = static_cast<std::uint32_t>(i) + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw InvalidInput("no subfamily meets the covering target");
}

std::uint64_t packing_census(int alphabet_size, int n, int k, double delta, std::span<const double> mu) {
  std::uint64_t count = 0;
  const auto words = atom_count(alphabet_size, k);
  for (AtomIndex w = 0; w < words; ++w) {
    if (is_word_packed(word_at(w, k, alphabet_size), alphabet_size, n, delta, mu).packed) ++count;
  }
  return count;
}

}  // namespace coverent::serial
