#include "coverent/setcover.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>

#include "coverent/errors.hpp"

namespace coverent {
namespace {

// Covered measure must exceed 1 - epsilon by more than roundoff.
constexpr double kTieMeasure = 1e-12;

double target_of(const CoverInstance& inst) { return 1.0 - inst.epsilon + kTieMeasure; }

}  // namespace

void validate(const CoverInstance& inst) {
  if (!(inst.epsilon >= 0.0) || inst.epsilon >= 1.0) throw InvalidInput("epsilon must lie in [0, 1)");
  const auto atoms = inst.atom_measures.size();
  double total = 0.0;
  for (double m : inst.atom_measures) {
    if (!(m >= 0.0)) throw InvalidInput("negative atom measure");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidInput("atom measures do not sum to 1");
  std::vector<char> seen(atoms, 0);
  for (const auto& s : inst.sets) {
    for (auto a : s) {
      if (a >= atoms) throw InvalidInput("set references an atom out of range");
      seen[a] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InvalidInput("some atom is in no set");
}

CoverInstance make_cover_instance(std::span<const double> cylinder, const Cover& cover, double epsilon) {
  CoverInstance inst;
  inst.atom_measures.assign(cylinder.begin(), cylinder.end());
  inst.epsilon = epsilon;
  inst.sets.reserve(cover.size());
  for (const auto& e : cover.elements()) {
    inst.sets.emplace_back(e.members().begin(), e.members().end());
  }
  return inst;
}

CoverInstance make_cover_instance(const ShiftMeasure& system, const Cover& cover, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in [0, 1)");
  const auto cyl = system.cylinder_measures(cover.depth());
  return make_cover_instance(cyl, cover, epsilon);
}

CoverInstance make_full_cover_instance(const Cover& cover) {
  const auto atoms = atom_count(cover.alphabet_size(), cover.depth());
  std::vector<double> uniform(atoms, 1.0 / static_cast<double>(atoms));
  return make_cover_instance(uniform, cover, 0.0);
}

bool meets_target(const CoverInstance& inst, std::span<const std::uint32_t> family) {
  std::vector<char> covered(inst.atom_measures.size(), 0);
  for (auto s : family) {
    for (auto a : inst.sets.at(s)) covered[a] = 1;
  }
  if (inst.full_cover()) return std::find(covered.begin(), covered.end(), 0) == covered.end();
  double mass = 0.0;
  for (std::size_t a = 0; a < covered.size(); ++a) {
    if (covered[a]) mass += inst.atom_measures[a];
  }
  return mass > target_of(inst);
}

CoverSolution n_greedy(const CoverInstance& inst) {
  const bool full = inst.full_cover();
  const auto atoms = inst.atom_measures.size();
  std::vector<char> covered(atoms, 0);
  std::size_t uncovered = atoms;
  double mass = 0.0;
  std::vector<std::uint32_t> witness;
  auto done = [&] { return full ? uncovered == 0 : mass > target_of(inst); };
  while (!done()) {
    double best_gain = 0.0;
    std::size_t best = inst.sets.size();
    for (std::size_t s = 0; s < inst.sets.size(); ++s) {
      double gain = 0.0;
      for (auto a : inst.sets[s]) {
        if (!covered[a]) gain += full ? 1.0 : inst.atom_measures[a];
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best == inst.sets.size()) throw InvalidInput("covering target is unreachable");
    witness.push_back(static_cast<std::uint32_t>(best));
    for (auto a : inst.sets[best]) {
      if (!covered[a]) {
        covered[a] = 1;
        --uncovered;
        mass += inst.atom_measures[a];
      }
    }
  }
  std::sort(witness.begin(), witness.end());
  return {witness.size(), std::move(witness), Method::greedy};
}

CoverSolution n_local_search(const CoverInstance& inst, std::uint64_t max_moves) {
  auto best = n_greedy(inst);
  const bool full = inst.full_cover();
  const auto atoms = inst.atom_measures.size();
  const auto sets = inst.sets.size();
  std::vector<double> weight(atoms);
  for (std::size_t a = 0; a < atoms; ++a) weight[a] = full ? 1.0 : inst.atom_measures[a];
  const double target = full ? static_cast<double>(atoms) - 0.5 : target_of(inst);

  std::vector<std::uint32_t> count(atoms);
  std::vector<char> in(sets);
  std::uint64_t moves = 0;
  while (best.count > 1 && moves < max_moves) {
    // Drop the member that loses the least, then hill-climb on covered weight.
    std::vector<std::uint32_t> cur = best.witness;
    std::fill(count.begin(), count.end(), 0);
    std::fill(in.begin(), in.end(), 0);
    for (auto s : cur) {
      in[s] = 1;
      for (auto a : inst.sets[s]) ++count[a];
    }
    auto loss = [&](std::uint32_t s) {
      double l = 0.0;
      for (auto a : inst.sets[s]) l += count[a] == 1 ? weight[a] : 0.0;
      return l;
    };
    std::size_t drop = 0;
    for (std::size_t i = 1; i < cur.size(); ++i) {
      if (loss(cur[i]) < loss(cur[drop])) drop = i;
    }
    for (auto a : inst.sets[cur[drop]]) --count[a];
    in[cur[drop]] = 0;
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(drop));
    double mass = 0.0;
    for (std::size_t a = 0; a < atoms; ++a) mass += count[a] ? weight[a] : 0.0;

    std::vector<double> out_loss(cur.size());
    while (mass <= target && moves < max_moves) {
      ++moves;
      for (std::size_t i = 0; i < cur.size(); ++i) out_loss[i] = loss(cur[i]);
      double best_delta = 1e-12;
      std::size_t best_i = 0, best_j = sets;
      for (std::size_t j = 0; j < sets; ++j) {
        if (in[j]) continue;
        // Gain of j alone, and the part of it already held once by each member.
        double gain = 0.0;
        for (auto a : inst.sets[j]) gain += count[a] == 0 ? weight[a] : 0.0;
        if (gain <= best_delta) continue;  // a swap never beats j's own gain
        for (std::size_t i = 0; i < cur.size(); ++i) {
          const auto& out = inst.sets[cur[i]];
          double back = 0.0;
          for (auto a : inst.sets[j]) {
            if (count[a] == 1 && std::binary_search(out.begin(), out.end(), a)) back += weight[a];
          }
          const double delta = gain + back - out_loss[i];
          if (delta > best_delta) {
            best_delta = delta;
            best_i = i;
            best_j = j;
          }
        }
      }
      if (best_j == sets) break;
      for (auto a : inst.sets[cur[best_i]]) --count[a];
      in[cur[best_i]] = 0;
      cur[best_i] = static_cast<std::uint32_t>(best_j);
      in[best_j] = 1;
      for (auto a : inst.sets[best_j]) ++count[a];
      mass += best_delta;
    }
    if (mass <= target) break;
    std::sort(cur.begin(), cur.end());
    if (!meets_target(inst, cur)) break;
    best = {cur.size(), std::move(cur), Method::heuristic};
  }
  return best;
}

namespace {

// Sets after reduction, with their original indices.
struct Reduced {
  std::vector<std::vector<std::uint32_t>> sets;
  std::vector<std::uint32_t> origin;
  std::vector<std::uint32_t> forced;  // original indices, full mode only
  std::vector<char> covered;          // atoms covered by forced sets
};

void drop_dominated(Reduced& r, std::size_t atoms) {
  const auto n = r.sets.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Larger first, then lower original index, so a kept superset always
  // precedes what it dominates and duplicates keep their lowest index.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r.sets[a].size() > r.sets[b].size(); });
  std::vector<std::vector<std::uint32_t>> holders(atoms);
  std::vector<char> keep(n, 0);
  for (auto i : order) {
    const auto& s = r.sets[i];
    if (s.empty()) continue;
    // Candidate supersets are the kept sets holding this set's rarest atom.
    const auto* rarest = &holders[s.front()];
    for (auto a : s) {
      if (holders[a].size() < rarest->size()) rarest = &holders[a];
    }
    const bool dominated = std::any_of(rarest->begin(), rarest->end(), [&](std::uint32_t k) {
      return std::includes(r.sets[k].begin(), r.sets[k].end(), s.begin(), s.end());
    });
    if (dominated) continue;
    keep[i] = 1;
    for (auto a : s) holders[a].push_back(static_cast<std::uint32_t>(i));
  }
  Reduced out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) {
      out.sets.push_back(std::move(r.sets[i]));
      out.origin.push_back(r.origin[i]);
    }
  }
  r.sets = std::move(out.sets);
  r.origin = std::move(out.origin);
}

Reduced reduce(const CoverInstance& inst) {
  const bool full = inst.full_cover();
  const auto atoms = inst.atom_measures.size();
  Reduced r;
  r.covered.assign(atoms, 0);
  for (std::size_t s = 0; s < inst.sets.size(); ++s) {
    std::vector<std::uint32_t> members;
    for (auto a : inst.sets[s]) {
      if (full || inst.atom_measures[a] > 0.0) members.push_back(a);
    }
    if (members.empty()) continue;
    r.sets.push_back(std::move(members));
    r.origin.push_back(static_cast<std::uint32_t>(s));
  }
  drop_dominated(r, atoms);
  if (!full) return r;

  // Forced sets: the only holder of some uncovered atom.
  while (true) {
    std::vector<std::uint32_t> holders(atoms, 0), last(atoms, 0);
    for (std::size_t i = 0; i < r.sets.size(); ++i) {
      for (auto a : r.sets[i]) {
        ++holders[a];
        last[a] = static_cast<std::uint32_t>(i);
      }
    }
    std::vector<char> force(r.sets.size(), 0);
    bool any = false;
    for (std::size_t a = 0; a < atoms; ++a) {
      if (!r.covered[a] && holders[a] == 1) {
        force[last[a]] = 1;
        any = true;
      }
    }
    if (!any) break;
    for (std::size_t i = 0; i < r.sets.size(); ++i) {
      if (!force[i]) continue;
      r.forced.push_back(r.origin[i]);
      for (auto a : r.sets[i]) r.covered[a] = 1;
    }
    Reduced rest;
    for (std::size_t i = 0; i < r.sets.size(); ++i) {
      if (force[i]) continue;
      std::vector<std::uint32_t> members;
      for (auto a : r.sets[i]) {
        if (!r.covered[a]) members.push_back(a);
      }
      if (members.empty()) continue;
      rest.sets.push_back(std::move(members));
      rest.origin.push_back(r.origin[i]);
    }
    r.sets = std::move(rest.sets);
    r.origin = std::move(rest.origin);
    drop_dominated(r, atoms);
  }
  return r;
}

bool disjoint(const Reduced& r, std::size_t atoms) {
  std::vector<char> seen(atoms, 0);
  for (const auto& s : r.sets) {
    for (auto a : s) {
      if (seen[a]) return false;
      seen[a] = 1;
    }
  }
  return true;
}

struct BranchResult {
  std::size_t count = 0;
  std::vector<std::uint32_t> witness;  // reduced indices
  bool found = false;
};

class NodeCounter {
 public:
  NodeCounter(std::uint64_t max_nodes, std::atomic<std::uint64_t>& total, std::atomic<bool>& aborted)
      : max_(max_nodes), total_(total), aborted_(aborted) {}

  // False once the shared budget is exhausted.
  bool tick(std::uint64_t units = 1) {
    if (aborted_.load(std::memory_order_relaxed)) return false;
    pending_ += units;
    if (pending_ >= kFlush) {
      const auto add = pending_;
      pending_ = 0;
      if ((total_ += add) > max_) {
        aborted_ = true;
        return false;
      }
    }
    return true;
  }
  void flush() {
    total_ += pending_;
    pending_ = 0;
  }

 private:
  static constexpr std::uint64_t kFlush = 1024;
  std::uint64_t max_;
  std::atomic<std::uint64_t>& total_;
  std::atomic<bool>& aborted_;
  std::uint64_t pending_ = 0;
};

// Partial cover: subsets enumerated as increasing index sequences over sets
// sorted by decreasing measure.
class PartialSearch {
 public:
  PartialSearch(const std::vector<std::vector<std::uint32_t>>& sets, std::span<const double> measures,
                std::span<const double> set_mass, double target, NodeCounter& counter)
      : sets_(sets), measures_(measures), set_mass_(set_mass), target_(target), counter_(counter),
        covered_(measures.size(), 0) {}

  BranchResult run(std::size_t first, std::size_t incumbent) {
    best_ = {incumbent, {}, false};
    chosen_.clear();
    const double gain = include(first);
    chosen_.push_back(static_cast<std::uint32_t>(first));
    dfs(first, gain);
    chosen_.pop_back();
    exclude(first);
    counter_.flush();
    return std::move(best_);
  }

 private:
  double include(std::size_t s) {
    double gain = 0.0;
    for (auto a : sets_[s]) {
      if (covered_[a]++ == 0) gain += measures_[a];
    }
    return gain;
  }
  void exclude(std::size_t s) {
    for (auto a : sets_[s]) --covered_[a];
  }

  void dfs(std::size_t last, double mass) {
    if (!counter_.tick()) return;
    if (mass > target_) {
      if (chosen_.size() < best_.count) best_ = {chosen_.size(), chosen_, true};
      return;
    }
    const double need = target_ - mass;
    if (chosen_.size() + gain_bound(last, need) >= best_.count) return;
    for (std::size_t j = last + 1; j < sets_.size(); ++j) {
      const auto lower = static_cast<std::size_t>(std::floor(need / set_mass_[j])) + 1;
      if (chosen_.size() + lower >= best_.count) break;  // set_mass_ is non-increasing
      if (!counter_.tick(work(j))) return;
      const double gain = include(j);
      if (gain > 0.0) {
        chosen_.push_back(static_cast<std::uint32_t>(j));
        dfs(j, mass + gain);
        chosen_.pop_back();
      }
      exclude(j);
    }
  }

  // Scanning a set costs one unit per 32 atoms.
  std::uint64_t work(std::size_t j) const { return 1 + sets_[j].size() / 32; }

  // Fewest further sets that could reach the target: the k largest
  // marginal gains must add up to `need`, since gains only shrink.
  std::size_t gain_bound(std::size_t last, double need) {
    gains_.clear();
    for (std::size_t j = last + 1; j < sets_.size(); ++j) {
      if (!counter_.tick(work(j))) return SIZE_MAX / 2;
      double g = 0.0;
      for (auto a : sets_[j]) {
        if (covered_[a] == 0) g += measures_[a];
      }
      if (g > 0.0) gains_.push_back(g);
    }
    std::sort(gains_.begin(), gains_.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t k = 0; k < gains_.size(); ++k) {
      sum += gains_[k];
      if (sum >= need - 1e-12) return k + 1;
    }
    return SIZE_MAX / 2;
  }

  const std::vector<std::vector<std::uint32_t>>& sets_;
  std::span<const double> measures_;
  std::span<const double> set_mass_;
  std::vector<double> gains_;
  double target_;
  NodeCounter& counter_;
  std::vector<std::uint32_t> covered_;
  std::vector<std::uint32_t> chosen_;
  BranchResult best_;
};

// Full cover: branch on the uncovered atom with the fewest usable holders;
// siblings exclude the sets tried before them.
class FullSearch {
 public:
  FullSearch(const std::vector<std::vector<std::uint32_t>>& sets, const std::vector<std::vector<std::uint32_t>>& holders,
             std::vector<char> relevant, NodeCounter& counter)
      : sets_(sets), holders_(holders), counter_(counter), covered_(relevant.size(), 0),
        excluded_(sets.size(), 0) {
    uncovered_ = 0;
    for (std::size_t a = 0; a < relevant.size(); ++a) {
      if (relevant[a]) {
        ++uncovered_;
      } else {
        covered_[a] = 1;  // already covered by forced sets or irrelevant
      }
    }
  }

  // Branch `k` at the root: take holder k of the root atom, exclude holders before it.
  BranchResult run(std::uint32_t root_atom, std::size_t k, std::size_t incumbent) {
    best_ = {incumbent, {}, false};
    const auto& hs = holders_[root_atom];
    for (std::size_t i = 0; i < k; ++i) excluded_[hs[i]] = 1;
    take(hs[k]);
    dfs();
    drop(hs[k]);
    for (std::size_t i = 0; i < k; ++i) excluded_[hs[i]] = 0;
    counter_.flush();
    return std::move(best_);
  }

  std::uint32_t pick_atom() const {
    std::uint32_t best_atom = 0;
    std::size_t best_options = SIZE_MAX;
    for (std::size_t a = 0; a < covered_.size(); ++a) {
      if (covered_[a]) continue;
      std::size_t options = 0;
      for (auto s : holders_[a]) options += excluded_[s] ? 0 : 1;
      if (options < best_options) {
        best_options = options;
        best_atom = static_cast<std::uint32_t>(a);
      }
    }
    return best_atom;
  }

 private:
  void take(std::uint32_t s) {
    chosen_.push_back(s);
    for (auto a : sets_[s]) {
      if (covered_[a]++ == 0) --uncovered_;
    }
  }
  void drop(std::uint32_t s) {
    chosen_.pop_back();
    for (auto a : sets_[s]) {
      if (--covered_[a] == 0) ++uncovered_;
    }
  }

  void dfs() {
    if (!counter_.tick()) return;
    if (uncovered_ == 0) {
      if (chosen_.size() < best_.count) {
        best_ = {chosen_.size(), chosen_, true};
        std::sort(best_.witness.begin(), best_.witness.end());
      }
      return;
    }
    if (chosen_.size() + 1 >= best_.count) return;
    std::size_t max_gain = 0;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (excluded_[s]) continue;
      if (!counter_.tick(1 + sets_[s].size() / 32)) return;
      std::size_t g = 0;
      for (auto a : sets_[s]) g += covered_[a] ? 0 : 1;
      max_gain = std::max(max_gain, g);
    }
    if (max_gain == 0) return;
    const std::size_t lower = (uncovered_ + max_gain - 1) / max_gain;
    if (chosen_.size() + lower >= best_.count) return;

    const auto atom = pick_atom();
    std::vector<std::uint32_t> tried;
    for (auto s : holders_[atom]) {
      if (excluded_[s]) continue;
      take(s);
      dfs();
      drop(s);
      excluded_[s] = 1;
      tried.push_back(s);
    }
    for (auto s : tried) excluded_[s] = 0;
  }

  const std::vector<std::vector<std::uint32_t>>& sets_;
  const std::vector<std::vector<std::uint32_t>>& holders_;
  NodeCounter& counter_;
  std::vector<std::uint32_t> covered_;
  std::vector<char> excluded_;
  std::size_t uncovered_;
  std::vector<std::uint32_t> chosen_;
  BranchResult best_;
};

std::vector<std::uint32_t> to_original(const Reduced& r, std::span<const std::uint32_t> reduced_witness) {
  std::vector<std::uint32_t> w = r.forced;
  for (auto i : reduced_witness) w.push_back(r.origin[i]);
  std::sort(w.begin(), w.end());
  return w;
}

[[noreturn]] void node_budget_exceeded(std::uint64_t max_nodes) {
  throw CapacityError("n_exact: branch-and-bound exceeded the node budget of " + std::to_string(max_nodes) +
                      "; use n_greedy");
}

}  // namespace

CoverSolution n_exact(const CoverInstance& inst, const SetCoverBudget& budget) {
  validate(inst);
  const bool full = inst.full_cover();
  const auto atoms = inst.atom_measures.size();
  auto r = reduce(inst);

  if (full && r.sets.empty()) {
    auto w = to_original(r, {});
    return {w.size(), std::move(w), Method::exact};
  }

  std::vector<double> set_mass(r.sets.size(), 0.0);
  for (std::size_t i = 0; i < r.sets.size(); ++i) {
    for (auto a : r.sets[i]) set_mass[i] += inst.atom_measures[a];
  }

  if (disjoint(r, atoms)) {
    if (full) {
      std::vector<std::uint32_t> all(r.sets.size());
      std::iota(all.begin(), all.end(), 0u);
      auto w = to_original(r, all);
      return {w.size(), std::move(w), Method::exact};
    }
    // Disjoint sets: the heaviest ones first is optimal.
    std::vector<std::uint32_t> order(r.sets.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return set_mass[a] > set_mass[b]; });
    std::vector<std::uint32_t> picked;
    double mass = 0.0;
    for (auto i : order) {
      if (mass > target_of(inst)) break;
      picked.push_back(i);
      mass += set_mass[i];
    }
    if (!(mass > target_of(inst))) throw InvalidInput("covering target is unreachable");
    auto w = to_original(r, picked);
    return {w.size(), std::move(w), Method::exact};
  }

  if (r.sets.size() > budget.max_sets) {
    throw CapacityError("n_exact: " + std::to_string(r.sets.size()) + " sets after reduction exceed the budget of " +
                        std::to_string(budget.max_sets) + "; use n_greedy");
  }

  // Incumbent from greedy on the reduced instance.
  CoverInstance reduced_inst{inst.atom_measures, r.sets, inst.epsilon};
  if (full) {
    // Atoms already covered by forced sets become a dummy set so greedy
    // sees a consistent full-cover problem.
    std::vector<std::uint32_t> done;
    for (std::size_t a = 0; a < atoms; ++a) {
      if (r.covered[a]) done.push_back(static_cast<std::uint32_t>(a));
    }
    if (!done.empty()) reduced_inst.sets.push_back(std::move(done));
  }
  auto greedy = n_greedy(reduced_inst);
  std::vector<std::uint32_t> greedy_witness;
  for (auto i : greedy.witness) {
    if (i < r.sets.size()) greedy_witness.push_back(i);
  }
  const std::size_t incumbent = greedy_witness.size();

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::vector<BranchResult> results;

  if (!full) {
    // Sort by decreasing measure; remember the permutation.
    std::vector<std::uint32_t> order(r.sets.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return set_mass[a] > set_mass[b]; });
    std::vector<std::vector<std::uint32_t>> sorted_sets;
    std::vector<double> sorted_mass;
    for (auto i : order) {
      sorted_sets.push_back(r.sets[i]);
      sorted_mass.push_back(set_mass[i]);
    }
    const double target = target_of(inst);
    const auto branches = static_cast<std::int64_t>(sorted_sets.size());
    results.resize(sorted_sets.size());
#pragma omp parallel
    {
      NodeCounter counter(budget.max_nodes, nodes, aborted);
      PartialSearch search(sorted_sets, inst.atom_measures, sorted_mass, target, counter);
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t b = 0; b < branches; ++b) {
        const auto lower = static_cast<std::size_t>(std::floor(target / sorted_mass[b])) + 1;
        if (lower >= incumbent) continue;
        results[static_cast<std::size_t>(b)] = search.run(static_cast<std::size_t>(b), incumbent);
      }
    }
    for (auto& res : results) {
      for (auto& i : res.witness) i = order[i];
      std::sort(res.witness.begin(), res.witness.end());
    }
  } else {
    std::vector<std::vector<std::uint32_t>> holders(atoms);
    for (std::size_t i = 0; i < r.sets.size(); ++i) {
      for (auto a : r.sets[i]) holders[a].push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<char> relevant(atoms, 0);
    for (std::size_t a = 0; a < atoms; ++a) relevant[a] = r.covered[a] ? 0 : 1;
    NodeCounter root_counter(budget.max_nodes, nodes, aborted);
    const auto root_atom = FullSearch(r.sets, holders, relevant, root_counter).pick_atom();
    const auto branches = static_cast<std::int64_t>(holders[root_atom].size());
    results.resize(holders[root_atom].size());
#pragma omp parallel
    {
      NodeCounter counter(budget.max_nodes, nodes, aborted);
      FullSearch search(r.sets, holders, relevant, counter);
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t b = 0; b < branches; ++b) {
        results[static_cast<std::size_t>(b)] = search.run(root_atom, static_cast<std::size_t>(b), incumbent);
      }
    }
  }
  if (aborted || nodes > budget.max_nodes) node_budget_exceeded(budget.max_nodes);

  // Fewest sets wins; ties go to the lexicographically smallest witness.
  const BranchResult* best = nullptr;
  for (const auto& res : results) {
    if (!res.found) continue;
    if (!best || res.count < best->count || (res.count == best->count && res.witness < best->witness)) best = &res;
  }
  auto w = to_original(r, best ? best->witness : greedy_witness);
  return {w.size(), std::move(w), Method::exact};
}

}  // namespace coverent
