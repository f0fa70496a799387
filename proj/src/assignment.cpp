#include "coverent/assignment.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <span>

#include "coverent/errors.hpp"
#include "coverent/parallel.hpp"

namespace coverent {
namespace {

constexpr double kTieBits = 1e-12;
constexpr double kImproveBits = 1e-13;
// Prefix tasks are expanded until there are at least this many; fixed so
// the task list does not depend on the worker count.
constexpr std::uint64_t kMinTasks = 256;

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::exact:
      return "exact";
    case Method::heuristic:
      return "heuristic";
    case Method::greedy:
      return "greedy";
  }
  return "exact";
}

Method parse_method(std::string_view name) {
  if (name == "exact") return Method::exact;
  if (name == "heuristic") return Method::heuristic;
  if (name == "greedy") return Method::greedy;
  throw InvalidInput("unknown method tag \"" + std::string(name) + "\"");
}

double shannon_bits(std::span<const double> masses) {
  double h = 0.0;
  for (double p : masses) h += entropy_term(p);
  return h;
}

double partition_entropy(const ShiftMeasure& system, const Cover& partition) {
  const auto cyl = system.cylinder_measures(partition.depth());
  std::vector<double> masses;
  masses.reserve(partition.size());
  for (const auto& e : partition.elements()) masses.push_back(set_measure(cyl, e));
  return shannon_bits(masses);
}

Assignment::Assignment(const Cover& cover, int depth, std::vector<std::uint32_t> choice)
    : lifted_(lift_depth(cover, depth)), choice_(std::move(choice)) {
  const auto atoms = atom_count(lifted_.alphabet_size(), depth);
  if (choice_.size() != atoms) throw InvalidInput("assignment must choose an element for every word");
  for (AtomIndex w = 0; w < atoms; ++w) {
    const auto c = choice_[w];
    if (c >= lifted_.size() || !lifted_.elements()[c].contains(w)) {
      throw InvalidInput("assignment sends word \"" + word_at(w, depth, lifted_.alphabet_size()).str() +
                         "\" to element " + std::to_string(c) + " which does not contain it");
    }
  }
}

Partition induced_partition(const Assignment& a) {
  const auto& cover = a.lifted_cover();
  std::vector<std::vector<AtomIndex>> blocks(cover.size());
  for (std::size_t w = 0; w < a.choice().size(); ++w) blocks[a.choice()[w]].push_back(w);
  std::vector<WordSet> parts;
  for (auto& b : blocks) {
    if (!b.empty()) parts.emplace_back(cover.alphabet_size(), cover.depth(), std::move(b));
  }
  return Partition(Cover(cover.alphabet_size(), cover.depth(), std::move(parts)));
}

AssignmentSpace make_assignment_space(std::span<const double> cylinder, const Cover& cover, int depth) {
  AssignmentSpace s{lift_depth(cover, depth), {}, {}, {}, {}, {}};
  const auto atoms = atom_count(cover.alphabet_size(), depth);
  if (cylinder.size() != atoms) throw InvalidInput("cylinder measures do not match the assignment depth");
  s.atom_mass.assign(cylinder.begin(), cylinder.end());

  std::vector<std::uint32_t> count(atoms, 0);
  for (const auto& e : s.lifted.elements()) {
    for (auto w : e.members()) ++count[w];
  }
  std::vector<std::uint64_t> offset(atoms + 1, 0);
  for (AtomIndex w = 0; w < atoms; ++w) offset[w + 1] = offset[w] + count[w];
  std::vector<std::uint32_t> containing(offset.back());
  {
    auto cursor = offset;
    for (std::uint32_t i = 0; i < s.lifted.size(); ++i) {
      for (auto w : s.lifted.elements()[i].members()) containing[cursor[w]++] = i;
    }
  }

  // An element whose positive-mass words all lie in another element is never
  // needed: handing its words to the larger one merges two cells, which
  // cannot raise the entropy. Equal supports keep the lowest index.
  const auto k = s.lifted.size();
  std::vector<std::vector<AtomIndex>> support(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (auto w : s.lifted.elements()[i].members()) {
      if (s.atom_mass[w] > 0.0) support[i].push_back(w);
    }
  }
  std::vector<char> dominated(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    if (support[i].empty()) {
      dominated[i] = k > 1;
      continue;
    }
    const auto w = support[i].front();
    for (auto p = offset[w]; p < offset[w + 1] && !dominated[i]; ++p) {
      const auto j = containing[p];
      if (j == i || dominated[j]) continue;
      if (support[j].size() < support[i].size() || (support[j].size() == support[i].size() && j > i)) continue;
      dominated[i] = std::includes(support[j].begin(), support[j].end(), support[i].begin(), support[i].end());
    }
  }

  s.base_choice.resize(atoms);
  s.forced_mass.assign(k, 0.0);
  std::vector<std::uint32_t> keep;
  for (AtomIndex w = 0; w < atoms; ++w) {
    keep.clear();
    for (auto p = offset[w]; p < offset[w + 1]; ++p) {
      if (!dominated[containing[p]]) keep.push_back(containing[p]);
    }
    if (keep.empty()) keep.push_back(containing[offset[w]]);  // zero-mass word
    s.base_choice[w] = keep.front();
    if (keep.size() >= 2 && s.atom_mass[w] > 0.0) {
      s.free_atoms.push_back(w);
      s.eligible.push_back(keep);
    } else {
      s.forced_mass[keep.front()] += s.atom_mass[w];
    }
  }
  return s;
}

AssignmentSpace make_assignment_space(const ShiftMeasure& system, const Cover& cover, int depth) {
  if (system.alphabet_size() != cover.alphabet_size()) throw InvalidInput("cover alphabet does not match system");
  if (depth < cover.depth()) throw InvalidInput("assignment depth is shallower than the cover");
  const auto cyl = system.cylinder_measures(depth);
  return make_assignment_space(cyl, cover, depth);
}

double assignment_entropy(const AssignmentSpace& space, std::span<const std::uint32_t> free_choice) {
  auto masses = space.forced_mass;
  for (std::size_t t = 0; t < space.free_atoms.size(); ++t) masses[free_choice[t]] += space.atom_mass[space.free_atoms[t]];
  return shannon_bits(masses);
}

Assignment to_assignment(const AssignmentSpace& space, std::span<const std::uint32_t> free_choice) {
  auto choice = space.base_choice;
  for (std::size_t t = 0; t < space.free_atoms.size(); ++t) choice[space.free_atoms[t]] = free_choice[t];
  return Assignment(space.lifted, space.lifted.depth(), std::move(choice));
}

namespace {

void local_search(const AssignmentSpace& s, std::vector<std::uint32_t>& choice, std::vector<double>& masses) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t t = 0; t < s.free_atoms.size(); ++t) {
      const double mu = s.atom_mass[s.free_atoms[t]];
      const auto c = choice[t];
      for (auto e : s.eligible[t]) {
        if (e == c) continue;
        const double delta = entropy_term(masses[c] - mu) + entropy_term(masses[e] + mu) - entropy_term(masses[c]) -
                             entropy_term(masses[e]);
        if (delta < -kImproveBits) {
          masses[c] -= mu;
          masses[e] += mu;
          choice[t] = e;
          improved = true;
          break;
        }
      }
    }
  }
}

FreeSearchResult polish(const AssignmentSpace& s, std::vector<std::uint32_t> choice) {
  auto masses = s.forced_mass;
  for (std::size_t t = 0; t < choice.size(); ++t) masses[choice[t]] += s.atom_mass[s.free_atoms[t]];
  local_search(s, choice, masses);
  const double bits = assignment_entropy(s, choice);
  return {bits, std::move(choice)};
}

}  // namespace

std::vector<std::uint32_t> greedy_free_choice(const AssignmentSpace& s) {
  const auto f = s.free_atoms.size();
  std::vector<std::size_t> order(f);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.atom_mass[s.free_atoms[a]] > s.atom_mass[s.free_atoms[b]];
  });
  auto masses = s.forced_mass;
  std::vector<std::uint32_t> choice(f);
  for (auto t : order) {
    std::uint32_t best = s.eligible[t].front();
    for (auto e : s.eligible[t]) {
      if (masses[e] > masses[best]) best = e;
    }
    choice[t] = best;
    masses[best] += s.atom_mass[s.free_atoms[t]];
  }
  return choice;
}

FreeSearchResult heuristic_free_search(const AssignmentSpace& s, std::uint64_t seed, int restarts) {
  restarts = std::max(restarts, 1);
  std::vector<FreeSearchResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < restarts; ++r) {
    std::vector<std::uint32_t> start;
    if (r == 0) {
      start = greedy_free_choice(s);
    } else {
      Rng rng(derive_seed(seed, "assignment_restart", static_cast<std::uint64_t>(r)));
      start.resize(s.free_atoms.size());
      for (std::size_t t = 0; t < start.size(); ++t) start[t] = s.eligible[t][rng.below(s.eligible[t].size())];
    }
    results[static_cast<std::size_t>(r)] = polish(s, std::move(start));
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].bits < results[best].bits - kTieBits) best = r;
  }
  return std::move(results[best]);
}

namespace {

class ExactSearch {
 public:
  ExactSearch(const AssignmentSpace& s, std::span<const std::size_t> order, std::uint64_t max_nodes,
              std::atomic<std::uint64_t>& nodes, std::atomic<bool>& aborted)
      : s_(s), order_(order), max_nodes_(max_nodes), nodes_(nodes), aborted_(aborted) {
    const auto f = s.free_atoms.size();
    suffix_mass_.assign(f + 1, 0.0);
    suffix_union_.resize(f + 1);
    std::vector<char> in(s.lifted.size(), 0);
    for (std::size_t t = f; t-- > 0;) {
      suffix_mass_[t] = suffix_mass_[t + 1] + s.atom_mass[s.free_atoms[order[t]]];
      suffix_union_[t] = suffix_union_[t + 1];
      for (auto e : s.eligible[order[t]]) {
        if (!in[e]) {
          in[e] = 1;
          suffix_union_[t].push_back(e);
        }
      }
    }
  }

  // Searches the subtree below a fixed prefix. `bound` is a known upper
  // bound plus slack; only choices strictly better than it are recorded.
  FreeSearchResult run(std::span<const std::uint32_t> prefix, double bound) {
    masses_ = s_.forced_mass;
    choice_.assign(s_.free_atoms.size(), 0);
    for (std::size_t t = 0; t < prefix.size(); ++t) {
      choice_[order_[t]] = prefix[t];
      masses_[prefix[t]] += s_.atom_mass[s_.free_atoms[order_[t]]];
    }
    best_ = {bound, {}};
    local_nodes_ = 0;
    dfs(prefix.size(), shannon_bits(masses_));
    nodes_ += local_nodes_ % kFlushEvery;
    return std::move(best_);
  }

 private:
  static constexpr std::uint64_t kFlushEvery = 4096;

  void dfs(std::size_t t, double h) {
    if (aborted_.load(std::memory_order_relaxed)) return;
    if (++local_nodes_ % kFlushEvery == 0) {
      if ((nodes_ += kFlushEvery) > max_nodes_) {
        aborted_ = true;
        return;
      }
    }
    if (t == s_.free_atoms.size()) {
      if (h < best_.bits - kTieBits) best_ = {h, choice_};
      return;
    }
    const double r = suffix_mass_[t];
    double heaviest = 0.0;
    for (auto e : suffix_union_[t]) heaviest = std::max(heaviest, masses_[e]);
    const double lower = h + entropy_term(heaviest + r) - entropy_term(heaviest);
    if (lower >= best_.bits - kTieBits) return;

    const auto k = order_[t];
    const double mu = s_.atom_mass[s_.free_atoms[k]];
    for (auto e : s_.eligible[k]) {
      const double before = masses_[e];
      const double next_h = h - entropy_term(before) + entropy_term(before + mu);
      masses_[e] = before + mu;
      choice_[k] = e;
      dfs(t + 1, next_h);
      masses_[e] = before;
    }
  }

  const AssignmentSpace& s_;
  std::span<const std::size_t> order_;  // heaviest free words first
  std::uint64_t max_nodes_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& aborted_;
  std::vector<double> suffix_mass_;
  std::vector<std::vector<std::uint32_t>> suffix_union_;
  std::vector<double> masses_;
  std::vector<std::uint32_t> choice_;
  FreeSearchResult best_;
  std::uint64_t local_nodes_ = 0;
};

}  // namespace

FreeSearchResult exact_free_search(const AssignmentSpace& s, const AssignmentBudget& budget) {
  const auto f = s.free_atoms.size();
  if (f > budget.max_free_words) {
    throw CapacityError("exact assignment search: " + std::to_string(f) + " multi-covered words exceed the budget of " +
                        std::to_string(budget.max_free_words) + "; use the heuristic");
  }
  if (f == 0) return {assignment_entropy(s, {}), {}};

  const auto incumbent = polish(s, greedy_free_choice(s));
  const double bound = incumbent.bits + 2 * kTieBits;

  // Heavy words first: their placement moves the bound the most.
  std::vector<std::size_t> order(f);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.atom_mass[s.free_atoms[a]] > s.atom_mass[s.free_atoms[b]];
  });

  // Lexicographically ordered prefix tasks.
  std::size_t prefix_len = 0;
  std::uint64_t tasks = 1;
  while (prefix_len < f && tasks < kMinTasks) tasks *= s.eligible[order[prefix_len++]].size();
  std::vector<std::vector<std::uint32_t>> prefixes;
  prefixes.reserve(tasks);
  {
    std::vector<std::size_t> pos(prefix_len, 0);
    while (true) {
      std::vector<std::uint32_t> p(prefix_len);
      for (std::size_t t = 0; t < prefix_len; ++t) p[t] = s.eligible[order[t]][pos[t]];
      prefixes.push_back(std::move(p));
      std::ptrdiff_t t = static_cast<std::ptrdiff_t>(prefix_len) - 1;
      while (t >= 0 && ++pos[t] == s.eligible[order[t]].size()) pos[t--] = 0;
      if (t < 0) break;
    }
  }

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::vector<FreeSearchResult> results(prefixes.size());
  const auto task_count = static_cast<std::int64_t>(prefixes.size());
#pragma omp parallel
  {
    ExactSearch search(s, order, budget.max_nodes, nodes, aborted);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < task_count; ++i) {
      results[static_cast<std::size_t>(i)] = search.run(prefixes[static_cast<std::size_t>(i)], bound);
    }
  }
  if (aborted || nodes > budget.max_nodes) {
    throw CapacityError("exact assignment search exceeded the node budget of " + std::to_string(budget.max_nodes));
  }

  FreeSearchResult best{bound, {}};
  for (auto& r : results) {
    if (!r.free_choice.empty() && r.bits < best.bits - kTieBits) best = std::move(r);
  }
  if (best.free_choice.empty()) best = incumbent;
  best.bits = assignment_entropy(s, best.free_choice);
  return best;
}

StaticEntropy static_cover_entropy_exact(const ShiftMeasure& system, const Cover& cover, int depth,
                                         const AssignmentBudget& budget) {
  const auto space = make_assignment_space(system, cover, depth);
  auto r = exact_free_search(space, budget);
  return {r.bits, to_assignment(space, r.free_choice), Method::exact};
}

StaticEntropy static_cover_entropy_heuristic(const ShiftMeasure& system, const Cover& cover, int depth,
                                             std::uint64_t seed, int restarts) {
  const auto space = make_assignment_space(system, cover, depth);
  auto r = heuristic_free_search(space, seed, restarts);
  return {r.bits, to_assignment(space, r.free_choice), Method::heuristic};
}

StaticEntropy static_cover_entropy(const ShiftMeasure& system, const Cover& cover, int depth,
                                   const AssignmentBudget& budget, std::uint64_t seed, int restarts) {
  const auto space = make_assignment_space(system, cover, depth);
  if (space.free_atoms.size() <= budget.max_free_words) {
    try {
      auto r = exact_free_search(space, budget);
      return {r.bits, to_assignment(space, r.free_choice), Method::exact};
    } catch (const CapacityError&) {
      // node budget: fall through to the heuristic
    }
  }
  auto r = heuristic_free_search(space, seed, restarts);
  return {r.bits, to_assignment(space, r.free_choice), Method::heuristic};
}

}  // namespace coverent
