#include "coverent/cover.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "coverent/errors.hpp"

namespace coverent {

WordSet::WordSet(int alphabet_size, int depth, std::vector<AtomIndex> members)
    : alphabet_size_(alphabet_size), depth_(depth), members_(std::move(members)) {
  if (depth_ < 1) throw InvalidInput("word set depth must be >= 1");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= atom_count(alphabet_size_, depth_)) {
    throw InvalidInput("word set member out of range for depth " + std::to_string(depth_));
  }
}

WordSet WordSet::full(int alphabet_size, int depth) {
  std::vector<AtomIndex> all(atom_count(alphabet_size, depth));
  std::iota(all.begin(), all.end(), AtomIndex{0});
  return WordSet(alphabet_size, depth, std::move(all));
}

WordSet WordSet::from_words(int alphabet_size, int depth, std::span<const Word> words) {
  std::vector<AtomIndex> idx;
  idx.reserve(words.size());
  for (const auto& w : words) {
    if (static_cast<int>(w.depth()) != depth) {
      throw InvalidInput("word \"" + w.str() + "\" has depth " + std::to_string(w.depth()) + ", expected " +
                         std::to_string(depth));
    }
    for (auto a : w.symbols) {
      if (a >= alphabet_size) throw InvalidInput("word \"" + w.str() + "\" has a symbol outside the alphabet");
    }
    idx.push_back(word_index(w, alphabet_size));
  }
  return WordSet(alphabet_size, depth, std::move(idx));
}

bool WordSet::contains(AtomIndex atom) const {
  return std::binary_search(members_.begin(), members_.end(), atom);
}

bool WordSet::is_subset_of(const WordSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

std::vector<Word> WordSet::words() const {
  std::vector<Word> out;
  out.reserve(members_.size());
  for (auto m : members_) out.push_back(word_at(m, depth_, alphabet_size_));
  return out;
}

WordSet intersect(const WordSet& a, const WordSet& b) {
  if (a.depth() != b.depth()) throw InvalidInput("intersecting word sets of different depths");
  std::vector<AtomIndex> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return WordSet(a.alphabet_size(), a.depth(), std::move(out));
}

double set_measure(std::span<const double> cylinder, const WordSet& set) {
  double total = 0.0;
  for (auto m : set.members()) total += cylinder[m];
  return total;
}

double set_measure(const ShiftMeasure& system, const WordSet& set) {
  if (set.alphabet_size() != system.alphabet_size()) throw InvalidInput("word set alphabet does not match system");
  return set_measure(system.cylinder_measures(set.depth()), set);
}

Cover::Cover(int alphabet_size, int depth, std::vector<WordSet> elements)
    : alphabet_size_(alphabet_size), depth_(depth), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidInput("cover must have at least one element");
  const auto universe = atom_count(alphabet_size_, depth_);
  std::vector<char> seen(universe, 0);
  for (const auto& e : elements_) {
    if (e.depth() != depth_ || e.alphabet_size() != alphabet_size_) {
      throw InvalidInput("cover element depth or alphabet differs from the cover's");
    }
    for (auto m : e.members()) seen[m] = 1;
  }
  const auto hole = std::find(seen.begin(), seen.end(), 0);
  if (hole != seen.end()) {
    const auto missing = word_at(static_cast<AtomIndex>(hole - seen.begin()), depth_, alphabet_size_);
    throw InvalidInput("cover does not contain word \"" + missing.str() + "\"");
  }
}

Cover Cover::trivial(int alphabet_size, int depth) {
  return Cover(alphabet_size, depth, {WordSet::full(alphabet_size, depth)});
}

Cover Cover::cylinders(int alphabet_size, int depth) {
  std::vector<WordSet> parts;
  const auto n = atom_count(alphabet_size, depth);
  parts.reserve(n);
  for (AtomIndex i = 0; i < n; ++i) parts.emplace_back(alphabet_size, depth, std::vector<AtomIndex>{i});
  return Cover(alphabet_size, depth, std::move(parts));
}

bool Cover::is_partition() const {
  std::size_t total = 0;
  for (const auto& e : elements_) {
    if (e.empty()) return false;
    total += e.size();
  }
  // The union is already the universe, so disjointness is a size count.
  return total == atom_count(alphabet_size_, depth_);
}

Partition::Partition(Cover cover) : Cover(std::move(cover)) {
  if (!is_partition()) throw InvalidInput("cover is not a partition (overlapping or empty elements)");
}

bool same_elements(const Cover& a, const Cover& b) {
  if (a.depth() != b.depth() || a.alphabet_size() != b.alphabet_size()) return false;
  std::set<WordSet> sa(a.elements().begin(), a.elements().end());
  std::set<WordSet> sb(b.elements().begin(), b.elements().end());
  return sa == sb;
}

namespace {

void require_same_depth(const Cover& u, const Cover& v, const char* op) {
  if (u.depth() != v.depth()) {
    throw InvalidInput(std::string(op) + ": depth mismatch " + std::to_string(u.depth()) + " vs " +
                       std::to_string(v.depth()) + " (lift_depth first)");
  }
  if (u.alphabet_size() != v.alphabet_size()) throw InvalidInput(std::string(op) + ": alphabet mismatch");
}

}  // namespace

bool refines(const Cover& u, const Cover& v) {
  require_same_depth(u, v, "refines");
  return std::all_of(u.elements().begin(), u.elements().end(), [&](const WordSet& a) {
    return std::any_of(v.elements().begin(), v.elements().end(), [&](const WordSet& b) { return a.is_subset_of(b); });
  });
}

Cover join(const Cover& u, const Cover& v) {
  require_same_depth(u, v, "join");
  std::vector<WordSet> out;
  for (const auto& a : u.elements()) {
    for (const auto& b : v.elements()) {
      auto c = intersect(a, b);
      if (!c.empty()) out.push_back(std::move(c));
    }
  }
  return Cover(u.alphabet_size(), u.depth(), std::move(out));
}

Cover pullback(const Cover& u, int k) {
  if (k < 0) throw InvalidInput("pullback offset must be >= 0");
  if (k == 0) return u;
  const auto prefixes = atom_count(u.alphabet_size(), k);
  const auto stride = atom_count(u.alphabet_size(), u.depth());
  std::vector<WordSet> out;
  out.reserve(u.size());
  for (const auto& e : u.elements()) {
    std::vector<AtomIndex> members;
    members.reserve(e.size() * prefixes);
    for (AtomIndex p = 0; p < prefixes; ++p) {
      for (auto m : e.members()) members.push_back(p * stride + m);
    }
    out.emplace_back(u.alphabet_size(), u.depth() + k, std::move(members));
  }
  return Cover(u.alphabet_size(), u.depth() + k, std::move(out));
}

Cover lift_depth(const Cover& u, int depth) {
  if (depth < u.depth()) throw InvalidInput("lift_depth target is shallower than the cover");
  if (depth == u.depth()) return u;
  const auto suffixes = atom_count(u.alphabet_size(), depth - u.depth());
  std::vector<WordSet> out;
  out.reserve(u.size());
  for (const auto& e : u.elements()) {
    std::vector<AtomIndex> members;
    members.reserve(e.size() * suffixes);
    for (auto m : e.members()) {
      for (AtomIndex s = 0; s < suffixes; ++s) members.push_back(m * suffixes + s);
    }
    out.emplace_back(u.alphabet_size(), depth, std::move(members));
  }
  return Cover(u.alphabet_size(), depth, std::move(out));
}

DynamicJoin dyn_join(const Cover& u, int n, const DynJoinBudget& budget) {
  if (n < 1) throw InvalidInput("dyn_join horizon must be >= 1");
  const int m = u.alphabet_size();
  const int d = u.depth();
  const auto k = static_cast<std::uint64_t>(u.size());

  std::uint64_t candidates = 1;
  for (int j = 0; j < n; ++j) {
    if (candidates > budget.max_candidate_names / k) {
      throw CapacityError("dyn_join: |U|^n = " + std::to_string(k) + "^" + std::to_string(n) +
                              " exceeds the candidate-name budget; use the streaming estimators",
                          n);
    }
    candidates *= k;
  }
  if (n == 1) {
    std::vector<Name> names;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (!u.elements()[i].empty()) names.push_back({{i}});
    }
    std::vector<WordSet> elements;
    for (const auto& e : u.elements()) {
      if (!e.empty()) elements.push_back(e);
    }
    return {Cover(m, d, std::move(elements)), std::move(names)};
  }

  // containing[w] lists, ascending, the elements holding depth-d word w.
  const auto window_count = atom_count(m, d);
  std::vector<std::vector<std::uint32_t>> containing(window_count);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (auto w : u.elements()[i].members()) containing[w].push_back(i);
  }

  const int depth = n + d - 1;
  const auto atoms = static_cast<std::int64_t>(atom_count(m, depth));
  std::vector<AtomIndex> window_divisor(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) window_divisor[j] = atom_count(m, depth - d - j);

  auto window = [&](AtomIndex atom, int j) { return (atom / window_divisor[j]) % window_count; };

  // Pass 1: incidences per atom.
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(atoms) + 1, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < atoms; ++a) {
    std::uint64_t c = 1;
    for (int j = 0; j < n && c > 0; ++j) c *= containing[window(static_cast<AtomIndex>(a), j)].size();
    offsets[static_cast<std::size_t>(a) + 1] = c;
  }
  for (std::size_t a = 0; a < static_cast<std::size_t>(atoms); ++a) {
    offsets[a + 1] += offsets[a];
    if (offsets[a + 1] > budget.max_incidences) {
      throw CapacityError("dyn_join: name/word incidences exceed budget at n=" + std::to_string(n), n);
    }
  }

  // Pass 2: emit (name code, atom), each atom into its own slot range.
  struct Incidence {
    std::uint64_t code;
    AtomIndex atom;
  };
  std::vector<Incidence> incidences(offsets.back());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t a = 0; a < atoms; ++a) {
    const auto atom = static_cast<AtomIndex>(a);
    auto out = offsets[static_cast<std::size_t>(a)];
    if (out == offsets[static_cast<std::size_t>(a) + 1]) continue;
    std::vector<const std::vector<std::uint32_t>*> lists(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) lists[j] = &containing[window(atom, j)];
    std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
    while (true) {
      std::uint64_t code = 0;
      for (int j = 0; j < n; ++j) code = code * k + (*lists[j])[pos[j]];
      incidences[out++] = {code, atom};
      int j = n - 1;
      while (j >= 0 && ++pos[j] == lists[j]->size()) pos[j--] = 0;
      if (j < 0) break;
    }
  }
  std::sort(incidences.begin(), incidences.end(),
            [](const Incidence& x, const Incidence& y) { return x.code != y.code ? x.code < y.code : x.atom < y.atom; });

  std::vector<WordSet> elements;
  std::vector<Name> names;
  for (std::size_t i = 0; i < incidences.size();) {
    std::size_t j = i;
    std::vector<AtomIndex> members;
    while (j < incidences.size() && incidences[j].code == incidences[i].code) members.push_back(incidences[j++].atom);
    Name name;
    name.assignment.resize(static_cast<std::size_t>(n));
    auto code = incidences[i].code;
    for (int p = n - 1; p >= 0; --p) {
      name.assignment[p] = static_cast<std::uint32_t>(code % k);
      code /= k;
    }
    names.push_back(std::move(name));
    elements.emplace_back(m, depth, std::move(members));
    i = j;
  }
  return {Cover(m, depth, std::move(elements)), std::move(names)};
}

}  // namespace coverent
