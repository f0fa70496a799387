#include "coverent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "coverent/assignment.hpp"
#include "coverent/combinatorics.hpp"
#include "coverent/cover.hpp"
#include "coverent/errors.hpp"
#include "coverent/estimators.hpp"
#include "coverent/parallel.hpp"
#include "coverent/random_instances.hpp"
#include "coverent/serial.hpp"
#include "coverent/setcover.hpp"

namespace coverent {
namespace {

constexpr int kShownPerProperty = 5;

class Checker {
 public:
  explicit Checker(std::string suite) : suite_(std::move(suite)) {}

  // `describe` runs only on failure.
  void check(bool ok, const std::string& property, std::uint64_t instance,
             const std::function<std::string()>& describe) {
    ++checks_;
    if (ok) return;
    ++failures_;
    auto& shown = shown_[property];
    if (++shown <= kShownPerProperty) {
      lines_ << "FAIL " << suite_ << "/" << property << " instance " << instance << ": " << describe() << "\n";
    }
  }

  void instance() { ++instances_; }

  void merge_into(VerifyReport& r) {
    for (const auto& [property, count] : shown_) {
      if (count > kShownPerProperty) {
        lines_ << "FAIL " << suite_ << "/" << property << ": " << count - kShownPerProperty
               << " further failures not shown\n";
      }
    }
    std::ostringstream head;
    head << "suite " << suite_ << ": instances=" << instances_ << " checks=" << checks_ << " failures=" << failures_
         << "\n";
    r.text += head.str() + lines_.str();
    r.instances += instances_;
    r.checks += checks_;
    r.failures += failures_;
  }

 private:
  std::string suite_;
  std::ostringstream lines_;
  std::map<std::string, int> shown_;
  std::uint64_t instances_ = 0, checks_ = 0, failures_ = 0;
};

// Greedy one-step shrinking: drop whole elements, then single words,
// while the result is still a cover that fails.
Cover shrink(Cover u, const std::function<bool(const Cover&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < u.size() && !progress; ++i) {
      auto elems = u.elements();
      elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(i));
      if (elems.empty()) continue;
      try {
        Cover c(u.alphabet_size(), u.depth(), elems);
        if (fails(c)) {
          u = std::move(c);
          progress = true;
        }
      } catch (const InvalidInput&) {
      }
    }
    for (std::size_t i = 0; i < u.size() && !progress; ++i) {
      const auto members = u.elements()[i].members();
      for (std::size_t j = 0; j < members.size() && !progress; ++j) {
        if (members.size() == 1) break;
        std::vector<AtomIndex> fewer(members.begin(), members.end());
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(j));
        auto elems = u.elements();
        elems[i] = WordSet(u.alphabet_size(), u.depth(), std::move(fewer));
        try {
          Cover c(u.alphabet_size(), u.depth(), elems);
          if (fails(c)) {
            u = std::move(c);
            progress = true;
          }
        } catch (const InvalidInput&) {
        }
      }
    }
  }
  return u;
}

// A failing cover property: check it, and on failure report the shrunk cover.
void check_cover(Checker& ck, const std::string& property, std::uint64_t instance, const Cover& u,
                 const std::string& context, const std::function<bool(const Cover&)>& holds) {
  bool ok = false;
  try {
    ok = holds(u);
  } catch (const std::exception&) {
    ok = false;
  }
  ck.check(ok, property, instance, [&] {
    auto fails = [&](const Cover& c) {
      try {
        return !holds(c);
      } catch (const std::exception&) {
        return true;
      }
    };
    return describe(shrink(u, fails)) + (context.empty() ? "" : " " + context);
  });
}

// Exact H_mu at the cover's own depth, when the search fits.
std::optional<double> exact_entropy(const ShiftMeasure& system, const Cover& u, int depth = 0) {
  const auto space = make_assignment_space(system, u, depth ? depth : u.depth());
  if (space.free_atoms.size() > 16) return std::nullopt;
  try {
    return exact_free_search(space).bits;
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

std::optional<std::size_t> exact_count(const CoverInstance& inst) {
  try {
    return n_exact(inst).count;
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

std::uint64_t instance_seed(std::uint64_t seed, const std::string& suite, int i) {
  return derive_seed(seed, "verify/" + suite, static_cast<std::uint64_t>(i));
}

// ---------------------------------------------------------------------------

void cover_algebra_suite(Checker& ck, std::uint64_t seed, int instances) {
  for (int i = 0; i < instances; ++i) {
    ck.instance();
    Rng rng(instance_seed(seed, "cover-algebra", i));
    const int m = 2 + static_cast<int>(rng.below(2));
    const int d = 1 + static_cast<int>(rng.below(2));
    const auto u = random_cover(rng, m, d, 4);
    const auto v = random_cover(rng, m, d, 4);
    const auto w = random_cover(rng, m, d, 4);
    const ShiftMeasure sys = random_markov(rng, m);
    const std::string ctx_v = "V=" + describe(v);

    check_cover(ck, "refines-reflexive", i, u, "", [](const Cover& c) { return refines(c, c); });
    check_cover(ck, "trivial-coarsest", i, u, "",
                [](const Cover& c) { return refines(c, Cover::trivial(c.alphabet_size(), c.depth())); });
    check_cover(ck, "join-refines-both", i, u, ctx_v, [&](const Cover& c) {
      const auto j = join(c, v);
      return refines(j, c) && refines(j, v);
    });
    check_cover(ck, "join-commutative", i, u, ctx_v,
                [&](const Cover& c) { return same_elements(join(c, v), join(v, c)); });
    check_cover(ck, "join-associative", i, u, ctx_v + " W=" + describe(w),
                [&](const Cover& c) { return same_elements(join(join(c, v), w), join(c, join(v, w))); });

    const int k = 1 + static_cast<int>(rng.below(2));
    check_cover(ck, "pullback-measure", i, u, describe(sys.mixture().components()[0]) + " k=" + std::to_string(k),
                [&](const Cover& c) {
                  const auto p = pullback(c, k);
                  for (std::size_t e = 0; e < c.size(); ++e) {
                    if (std::abs(set_measure(sys, p.elements()[e]) - set_measure(sys, c.elements()[e])) > 1e-10) {
                      return false;
                    }
                  }
                  return true;
                });
    check_cover(ck, "lift-measure", i, u, describe(sys.mixture().components()[0]), [&](const Cover& c) {
      const auto l = lift_depth(c, c.depth() + k);
      for (std::size_t e = 0; e < c.size(); ++e) {
        if (std::abs(set_measure(sys, l.elements()[e]) - set_measure(sys, c.elements()[e])) > 1e-10) return false;
      }
      return true;
    });

    const int total = 2 + static_cast<int>(rng.below(5));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - 1)));
    check_cover(ck, "dyn-join-split", i, u, "n=" + std::to_string(n) + " m=" + std::to_string(total - n),
                [&](const Cover& c) {
                  const auto whole = dyn_join(c, total).cover;
                  const auto head = lift_depth(dyn_join(c, n).cover, whole.depth());
                  const auto tail = pullback(dyn_join(c, total - n).cover, n);
                  return same_elements(whole, join(head, tail));
                });

    const int small = 1 + static_cast<int>(rng.below(3));
    check_cover(ck, "dyn-join-vs-serial", i, u, "n=" + std::to_string(small), [&](const Cover& c) {
      const auto a = dyn_join(c, small);
      const auto b = serial::dyn_join(c, small);
      return a.names == b.names && a.cover.elements() == b.cover.elements();
    });
    check_cover(ck, "dyn-join-names-realized", i, u, "n=" + std::to_string(small), [&](const Cover& c) {
      const auto a = dyn_join(c, small);
      const auto depth = a.cover.depth();
      for (std::size_t e = 0; e < a.names.size(); ++e) {
        for (auto atom : a.cover.elements()[e].members()) {
          const auto word = word_at(atom, depth, c.alphabet_size());
          for (int j = 0; j < small; ++j) {
            Word win;
            win.symbols.assign(word.symbols.begin() + j, word.symbols.begin() + j + c.depth());
            if (!c.elements()[a.names[e].assignment[j]].contains(word_index(win, c.alphabet_size()))) return false;
          }
        }
      }
      return true;
    });

    const auto part = random_partition(rng, m, d, 4);
    check_cover(ck, "partition-join-is-partition", i, part, "n=" + std::to_string(small),
                [&](const Cover& c) { return dyn_join(c, small).cover.is_partition(); });
  }
}

void assignment_suite(Checker& ck, std::uint64_t seed, int instances) {
  for (int i = 0; i < instances; ++i) {
    ck.instance();
    Rng rng(instance_seed(seed, "assignment", i));
    const int m = 2 + static_cast<int>(rng.below(2));
    const int d = 1 + static_cast<int>(rng.below(2));
    const auto u = random_cover(rng, m, d, 4);
    const auto v = random_cover(rng, m, d, 4);
    const auto chain = random_markov(rng, m);
    const ShiftMeasure sys = chain;
    const auto sys_text = describe(chain);
    const auto hseed = derive_seed(seed, "verify/assignment/heuristic", static_cast<std::uint64_t>(i));
    const auto rseed = derive_seed(seed, "verify/assignment/random-choice", static_cast<std::uint64_t>(i));

    check_cover(ck, "exact-vs-serial", i, u, sys_text, [&](const Cover& c) {
      const auto s = make_assignment_space(sys, c, c.depth());
      if (std::abs(exact_free_search(s).bits - serial::exact_free_search(s).bits) > 1e-9) return false;
      const auto cyl = sys.cylinder_measures(c.depth());
      try {
        return std::abs(exact_free_search(s).bits - serial::min_assignment_entropy(cyl, c, c.depth())) <= 1e-9;
      } catch (const CapacityError&) {
        return true;
      }
    });
    check_cover(ck, "heuristic-upper-bound", i, u, sys_text, [&](const Cover& c) {
      const auto s = make_assignment_space(sys, c, c.depth());
      return heuristic_free_search(s, hseed, 8).bits >= exact_free_search(s).bits - 1e-12;
    });
    check_cover(ck, "heuristic-exact-small", i, u, sys_text, [&](const Cover& c) {
      const auto s = make_assignment_space(sys, c, c.depth());
      if (s.free_atoms.size() > 6) return true;
      return std::abs(heuristic_free_search(s, hseed, 8).bits - exact_free_search(s).bits) <= 1e-9;
    });
    check_cover(ck, "greedy-upper-bound", i, u, sys_text, [&](const Cover& c) {
      const auto s = make_assignment_space(sys, c, c.depth());
      return assignment_entropy(s, greedy_free_choice(s)) >= exact_free_search(s).bits - 1e-12;
    });
    check_cover(ck, "random-assignment-upper-bound", i, u, sys_text, [&](const Cover& c) {
      const auto s = make_assignment_space(sys, c, c.depth());
      Rng local(rseed);
      std::vector<std::uint32_t> pick;
      for (const auto& e : s.eligible) pick.push_back(e[local.below(e.size())]);
      return assignment_entropy(s, pick) >= exact_free_search(s).bits - 1e-12;
    });
    check_cover(ck, "minimizer-consistent", i, u, sys_text, [&](const Cover& c) {
      const auto s = make_assignment_space(sys, c, c.depth());
      const auto r = exact_free_search(s);
      const auto p = induced_partition(to_assignment(s, r.free_choice));
      return refines(p, c) && std::abs(partition_entropy(sys, p) - r.bits) <= 1e-9;
    });
    check_cover(ck, "refinement-monotone", i, u, sys_text + " V=" + describe(v), [&](const Cover& c) {
      const auto j = join(c, v);
      const auto hj = exact_entropy(sys, j);
      const auto hc = exact_entropy(sys, c);
      return !hj || !hc || *hj >= *hc - 1e-12;
    });
    check_cover(ck, "subadditive", i, u, sys_text + " V=" + describe(v), [&](const Cover& c) {
      const auto hj = exact_entropy(sys, join(c, v));
      const auto hc = exact_entropy(sys, c);
      const auto hv = exact_entropy(sys, v);
      return !hj || !hc || !hv || *hj <= *hc + *hv + 1e-12;
    });
    check_cover(ck, "pullback-invariant", i, u, sys_text, [&](const Cover& c) {
      const auto hp = exact_entropy(sys, pullback(c, 1));
      const auto hc = exact_entropy(sys, c);
      return !hp || !hc || std::abs(*hp - *hc) <= 1e-9;
    });
    check_cover(ck, "deepening", i, u, sys_text, [&](const Cover& c) {
      const auto deep = exact_entropy(sys, c, c.depth() + 1);
      const auto base = exact_entropy(sys, c);
      return !deep || !base || *deep <= *base + 1e-12;
    });
  }
}

void setcover_suite(Checker& ck, std::uint64_t seed, int instances) {
  static const double kEps[] = {0.0, 0.05, 0.1, 0.25, 0.5};
  for (int i = 0; i < instances; ++i) {
    ck.instance();
    Rng rng(instance_seed(seed, "setcover", i));
    const int m = 2 + static_cast<int>(rng.below(2));
    const int d = 1 + static_cast<int>(rng.below(2));
    auto u = random_cover(rng, m, d, 6);
    // Every other instance uses a dynamical join for a larger family.
    if (i % 2 == 1) u = dyn_join(random_cover(rng, m, d, 3), 2).cover;
    const auto chain = random_markov(rng, m);
    const ShiftMeasure sys = chain;
    const double eps = rng.below(4) == 0 ? rng.uniform() * 0.9 : kEps[rng.below(5)];
    const auto ctx = describe(chain) + " eps=" + std::to_string(eps);

    check_cover(ck, "exact-vs-serial", i, u, ctx, [&](const Cover& c) {
      if (c.size() > 10) return true;
      const auto inst = make_cover_instance(sys, c, eps);
      return n_exact(inst).count == serial::n_exact(inst).count;
    });
    check_cover(ck, "witness-valid", i, u, ctx, [&](const Cover& c) {
      const auto inst = make_cover_instance(sys, c, eps);
      const auto sol = n_exact(inst);
      if (sol.witness.size() != sol.count) return false;
      // Recheck through the measure layer, independent of meets_target.
      std::vector<AtomIndex> all;
      for (auto s : sol.witness) {
        const auto mem = c.elements().at(s).members();
        all.insert(all.end(), mem.begin(), mem.end());
      }
      const WordSet unioned(c.alphabet_size(), c.depth(), std::move(all));
      if (eps == 0.0) return unioned.size() == atom_count(c.alphabet_size(), c.depth());
      return set_measure(sys, unioned) > 1.0 - eps;
    });
    check_cover(ck, "exact-le-greedy", i, u, ctx, [&](const Cover& c) {
      const auto inst = make_cover_instance(sys, c, eps);
      const auto g = n_greedy(inst);
      return meets_target(inst, g.witness) && n_exact(inst).count <= g.count;
    });
    check_cover(ck, "exact-le-local-le-greedy", i, u, ctx, [&](const Cover& c) {
      const auto inst = make_cover_instance(sys, c, eps);
      const auto l = n_local_search(inst);
      return meets_target(inst, l.witness) && l.witness.size() == l.count && n_exact(inst).count <= l.count &&
             l.count <= n_greedy(inst).count;
    });
    check_cover(ck, "monotone-in-epsilon", i, u, describe(chain), [&](const Cover& c) {
      std::size_t prev = 0;
      for (double e : {0.5, 0.25, 0.1, 0.05, 0.0}) {
        const auto n = n_exact(make_cover_instance(sys, c, e)).count;
        if (n < prev) return false;
        prev = n;
      }
      return true;
    });
  }
}

// Brute force over all position subsets; independent of the memoized search.
bool packed_brute(const Word& w, int alphabet, int n, double delta, std::span<const double> mu) {
  const int k = static_cast<int>(w.depth());
  const int slots = k - n + 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << slots); ++mask) {
    std::vector<double> counts(mu.size(), 0.0);
    int last = -n;
    int placed = 0;
    bool ok = true;
    for (int p = 0; p < slots && ok; ++p) {
      if (!(mask >> p & 1)) continue;
      if (p < last + n) ok = false;
      last = p;
      AtomIndex b = 0;
      for (int t = 0; t < n; ++t) b = b * static_cast<AtomIndex>(alphabet) + w.symbols[p + t];
      counts[b] += 1.0;
      ++placed;
    }
    if (!ok || !(static_cast<double>(placed) * n / k > 1.0 - delta)) continue;
    double dist = 0.0;
    for (std::size_t g = 0; g < mu.size(); ++g) dist = std::max(dist, std::abs(counts[g] / placed - mu[g]));
    if (dist < delta) return true;
  }
  return false;
}

std::string vec_text(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str() + "]";
}

void combinatorics_suite(Checker& ck, std::uint64_t seed, int instances) {
  for (int i = 0; i < instances; ++i) {
    ck.instance();
    Rng rng(instance_seed(seed, "combinatorics", i));

    const int kk = 1 + static_cast<int>(rng.below(64));
    const double dd = 0.49 * rng.uniform() + 0.001;
    const auto tail = binom_tail(kk, dd);
    ck.check(tail.exact.convert_to<double>() <= tail.bound * (1.0 + 1e-12), "binomial-tail", i,
             [&] { return "K=" + std::to_string(kk) + " delta=" + std::to_string(dd); });
    const double x = rng.uniform();
    ck.check(std::abs(binary_entropy(x) - binary_entropy(1.0 - x)) < 1e-12, "binary-entropy-symmetric", i,
             [&] { return "delta=" + std::to_string(x); });

    const int l = 1 + static_cast<int>(rng.below(6));
    std::vector<double> lambda(l);
    for (auto& v : lambda) v = 0.01 + 0.98 * rng.uniform();
    const NuVector nu(lambda);
    bool identity = true;
    for (int j = 0; j < l; ++j) {
      double sum = 0.0;
      for (int r = j; r < l; ++r) sum += nu.lambda(r) * nu.nu(r + 1);
      identity = identity && std::abs(sum - (1.0 - nu.nu(j))) <= 1e-12;
    }
    ck.check(identity, "nu-identity", i, [&] { return "lambda=" + vec_text(lambda); });

    // Small separated families: three levels, periodic placement, random phases.
    {
      const std::vector<std::int64_t> lengths{4 + static_cast<std::int64_t>(rng.below(4)),
                                              40 + static_cast<std::int64_t>(rng.below(20)), 400};
      std::vector<double> lam(3);
      for (auto& v : lam) v = 0.3 + 0.3 * rng.uniform();
      const auto fam = periodic_family(rng, 4000, lengths, lam, 0.15, 1e-6);
      const auto ex = extract_separated(fam);
      std::vector<std::pair<std::int64_t, std::int64_t>> all;
      for (std::size_t j = 0; j < ex.selected.size(); ++j) {
        for (auto s : ex.selected[j]) all.emplace_back(s, fam.levels[j].length);
      }
      auto ctx = [&] {
        return "K=4000 N=(" + std::to_string(lengths[0]) + "," + std::to_string(lengths[1]) + ",400) lambda=" +
               vec_text(lam) + " eps=0.15";
      };
      ck.check(check_separated(all), "extract-separated", i, ctx);
      const auto& h = ex.hypotheses;
      if (h.lengths_ok && h.densities_ok && h.windows_ok) {
        const NuVector nv(lam);
        bool dens = true;
        for (std::size_t j = 0; j < 3; ++j) {
          const double got = static_cast<double>(ex.selected[j].size() * fam.levels[j].length) / 4000.0;
          dens = dens && std::abs(got - lam[j] * nv.nu(j + 1)) <= ex.f[j];
        }
        ck.check(dens, "extract-density", i, ctx);
        ck.check(std::abs(ex.covered_fraction - (1.0 - nv.nu(0))) <= ex.phi, "extract-coverage", i, ctx);
      }
    }

    // Packings over the binary alphabet.
    const int n = 1 + static_cast<int>(rng.below(3));
    const int k = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(11 - n)));
    const double delta = 0.05 + 0.4 * rng.uniform();
    std::vector<double> mu(atom_count(2, n));
    double total = 0.0;
    for (auto& v : mu) {
      v = rng.below(4) == 0 ? 0.0 : rng.uniform();
      total += v;
    }
    if (total == 0.0) {
      mu[0] = 1.0;
      total = 1.0;
    }
    for (auto& v : mu) v /= total;
    auto pctx = [&] {
      return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " delta=" + std::to_string(delta) +
             " mu=" + vec_text(mu);
    };
    const auto census = packing_census(2, n, k, delta, mu);
    ck.check(census.count == serial::packing_census(2, n, k, delta, mu), "census-vs-serial", i, pctx);
    ck.check(static_cast<double>(census.count) <= census.bound, "census-bound", i, pctx);

    const auto word = word_at(rng.below(atom_count(2, k)), k, 2);
    const auto dec = is_word_packed(word, 2, n, delta, mu);
    ck.check(dec.packed == packed_brute(word, 2, n, delta, mu), "packed-vs-brute-force", i,
             [&] { return "word=" + word.str() + " " + pctx(); });
    if (dec.packed) {
      bool valid = true;
      try {
        validate(*dec.witness);
        for (std::size_t j = 0; j < dec.witness->positions.size(); ++j) {
          AtomIndex b = 0;
          for (int t = 0; t < n; ++t) b = b * 2 + word.symbols[dec.witness->positions[j] + t];
          valid = valid && b == dec.witness->blocks[j];
        }
        valid = valid && sup_distance(packing_distribution(*dec.witness, 2), mu) < delta;
      } catch (const InvalidInput&) {
        valid = false;
      }
      ck.check(valid, "packing-witness", i, [&] { return "word=" + word.str() + " " + pctx(); });
    }
  }
}

void estimators_suite(Checker& ck, std::uint64_t seed, int instances) {
  static const double kEps[] = {0.1, 0.25, 0.5};
  for (int i = 0; i < instances; ++i) {
    ck.instance();
    Rng rng(instance_seed(seed, "estimators", i));
    const int m = 2 + static_cast<int>(rng.below(2));
    const int d = 1 + static_cast<int>(rng.below(2));
    const auto u = random_cover(rng, m, d, 4);
    const auto chain = random_markov(rng, m);
    const ShiftMeasure sys = chain;
    const auto ctx = describe(chain);
    constexpr int kMax = 4;

    check_cover(ck, "entropy-le-log-count", i, u, ctx, [&](const Cover& c) {
      for (int n = 1; n <= kMax; ++n) {
        const auto dj = dyn_join(c, n).cover;
        const auto h = exact_entropy(sys, dj);
        const auto nf = exact_count(make_full_cover_instance(dj));
        if (h && nf && *h > std::log2(static_cast<double>(*nf)) + 1e-9) return false;
      }
      return true;
    });
    check_cover(ck, "count-monotone-in-epsilon", i, u, ctx, [&](const Cover& c) {
      for (int n = 1; n <= kMax; ++n) {
        const auto dj = dyn_join(c, n).cover;
        auto prev = exact_count(make_full_cover_instance(dj));
        for (double e : kEps) {
          const auto cur = exact_count(make_cover_instance(sys, dj, e));
          if (prev && cur && *cur > *prev) return false;
          if (cur) prev = cur;
        }
      }
      return true;
    });
    check_cover(ck, "subadditive", i, u, ctx, [&](const Cover& c) {
      std::vector<std::optional<double>> h(kMax + 1);
      std::vector<std::optional<std::size_t>> nf(kMax + 1);
      for (int n = 1; n <= kMax; ++n) {
        const auto dj = dyn_join(c, n).cover;
        h[n] = exact_entropy(sys, dj);
        nf[n] = exact_count(make_full_cover_instance(dj));
      }
      for (int a = 1; a <= kMax; ++a) {
        for (int b = 1; a + b <= kMax; ++b) {
          if (h[a + b] && h[a] && h[b] && *h[a + b] > *h[a] + *h[b] + 1e-9) return false;
          if (nf[a + b] && nf[a] && nf[b] && *nf[a + b] > *nf[a] * *nf[b]) return false;
        }
      }
      return true;
    });
    check_cover(ck, "block-system", i, u, ctx, [&](const Cover& c) {
      const auto base = h_minus_trace(sys, c, 4);
      const auto blocked = h_minus_trace(block_system(chain, 2), block_cover(c, 2), 2);
      for (int n = 1; n <= 2; ++n) {
        const auto& b = blocked.at(n);
        const auto& a = base.at(2 * n);
        if (a.method == Method::exact && b.method == Method::exact && std::abs(b.value - 2.0 * a.value) > 1e-9) {
          return false;
        }
      }
      return true;
    });
    check_cover(ck, "h-plus-refines", i, u, ctx, [&](const Cover& c) {
      const auto plus = h_plus_trace(sys, c, 3, c.depth());
      const auto minus = h_minus_trace(sys, c, 3);
      if (!plus.monotone) return false;
      for (int n = 1; n <= 3; ++n) {
        if (minus.at(n).method == Method::exact && plus.at(n).aux < minus.at(n).value - 1e-9) return false;
      }
      return true;
    });
    check_cover(ck, "h-e-le-h-c", i, u, ctx, [&](const Cover& c) {
      const auto hc = h_c_trace(c, 3);
      const auto he = h_e_trace(sys, c, 0.25, 3);
      for (int n = 1; n <= 3; ++n) {
        if (he.at(n).method == Method::exact && hc.at(n).method == Method::exact &&
            he.at(n).value > hc.at(n).value + 1e-12) {
          return false;
        }
      }
      return true;
    });
  }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"cover-algebra", "assignment", "setcover", "combinatorics", "estimators",
                                              "all"};
  return names;
}

VerifyReport run_verify_suite(std::string_view suite, std::uint64_t seed, int instances) {
  if (instances < 0) throw InvalidInput("instance count must be >= 0");
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw InvalidInput("unknown suite '" + std::string(suite) +
                       "' (expected cover-algebra, assignment, setcover, combinatorics, estimators or all)");
  }
  using Runner = void (*)(Checker&, std::uint64_t, int);
  const std::pair<const char*, Runner> runners[] = {{"cover-algebra", cover_algebra_suite},
                                                    {"assignment", assignment_suite},
                                                    {"setcover", setcover_suite},
                                                    {"combinatorics", combinatorics_suite},
                                                    {"estimators", estimators_suite}};
  VerifyReport report;
  for (const auto& [name, run] : runners) {
    if (suite != "all" && suite != name) continue;
    Checker ck(name);
    run(ck, seed, instances);
    ck.merge_into(report);
  }
  report.text += report.passed() ? "RESULT PASS\n" : "RESULT FAIL\n";
  return report;
}

}  // namespace coverent
