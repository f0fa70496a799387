#include <doctest.h>

#include <vector>

#include "coverent/errors.hpp"
#include "coverent/parallel.hpp"
#include "coverent/random_instances.hpp"
#include "coverent/serial.hpp"
#include "coverent/setcover.hpp"

using namespace coverent;

namespace {

const ShiftMeasure& fair() {
  static const ShiftMeasure s = MarkovSystem::bernoulli({0.5, 0.5});
  return s;
}

WordSet ws(int m, int d, std::initializer_list<const char*> words) {
  std::vector<Word> v;
  for (const char* s : words) v.push_back(parse_word(s, m));
  return WordSet::from_words(m, d, v);
}

// Measure of the union of the witness, recomputed from word sets.
double witness_measure(const ShiftMeasure& sys, const Cover& c, const std::vector<std::uint32_t>& witness) {
  std::vector<AtomIndex> all;
  for (auto s : witness) {
    const auto m = c.elements().at(s).members();
    all.insert(all.end(), m.begin(), m.end());
  }
  return set_measure(sys, WordSet(c.alphabet_size(), c.depth(), all));
}

}  // namespace

TEST_CASE("covering numbers on small instances") {
  const auto p = Cover::cylinders(2, 2);
  SUBCASE("a partition needs every element for a full cover") {
    CHECK(n_exact(make_full_cover_instance(p)).count == 4);
    CHECK(n_greedy(make_full_cover_instance(p)).count == 4);
  }
  SUBCASE("equal quarters, epsilon 0.3: need more than 0.7") {
    CHECK(n_exact(make_cover_instance(fair(), p, 0.3)).count == 3);
  }
  SUBCASE("exactly 1 - epsilon is not enough") {
    CHECK(n_exact(make_cover_instance(fair(), p, 0.25)).count == 4);
    CHECK(n_exact(make_cover_instance(fair(), p, 0.2500001)).count == 3);
  }
  SUBCASE("a cover holding X") {
    const Cover u(2, 2, {ws(2, 2, {"00"}), WordSet::full(2, 2), ws(2, 2, {"01", "11"})});
    for (double eps : {0.0, 0.1, 0.5, 0.9}) {
      const auto inst = make_cover_instance(fair(), u, eps);
      CHECK(n_exact(inst).count == 1);
      CHECK(n_greedy(inst).count == 1);
      CHECK(n_local_search(inst).count == 1);
    }
  }
  SUBCASE("witnesses are checked against set_measure") {
    const Cover u(2, 2, {ws(2, 2, {"00", "01", "10"}), ws(2, 2, {"01", "10", "11"})});
    const auto dj = dyn_join(u, 4).cover;
    for (double eps : {0.1, 0.2, 0.4}) {
      const auto sol = n_exact(make_cover_instance(fair(), dj, eps));
      CHECK(witness_measure(fair(), dj, sol.witness) > 1.0 - eps);
      CHECK(sol.witness.size() == sol.count);
    }
  }
}

TEST_CASE("overlap cover counts match a brute-force table") {
  // Minimum counts for n = 1..5, computed independently by enumerating all
  // subfamilies of the realized names.
  const Cover u(2, 2, {ws(2, 2, {"00", "01", "10"}), ws(2, 2, {"01", "10", "11"})});
  const std::vector<std::pair<double, std::vector<std::size_t>>> table{
      {0.0, {2, 2, 4, 4, 8}}, {0.2, {2, 2, 2, 3, 4}}, {0.4, {1, 1, 2, 2, 2}}};
  for (const auto& [eps, counts] : table) {
    for (int n = 1; n <= 5; ++n) {
      const auto dj = dyn_join(u, n).cover;
      const auto inst = eps == 0.0 ? make_full_cover_instance(dj) : make_cover_instance(fair(), dj, eps);
      CHECK(n_exact(inst).count == counts[static_cast<std::size_t>(n - 1)]);
    }
  }
}

TEST_CASE("greedy stays within one of exact on every small binary cover") {
  // All covers of the four depth-2 binary words by at most three nonempty
  // subsets, under a fixed non-uniform chain.
  const ShiftMeasure chain = MarkovSystem::from_matrix({{0.7, 0.3}, {0.4, 0.6}});
  std::size_t instances = 0;
  for (unsigned a = 1; a < 16; ++a) {
    for (unsigned b = a; b < 16; ++b) {
      for (unsigned c = b; c < 16; ++c) {
        if ((a | b | c) != 15) continue;
        std::vector<WordSet> els;
        for (unsigned mask : {a, b, c}) {
          std::vector<AtomIndex> mem;
          for (AtomIndex w = 0; w < 4; ++w) {
            if (mask >> w & 1u) mem.push_back(w);
          }
          els.emplace_back(2, 2, mem);
        }
        const Cover u(2, 2, els);
        for (double eps : {0.0, 0.15, 0.35, 0.6}) {
          const auto inst = make_cover_instance(chain, u, eps);
          const auto ex = n_exact(inst);
          const auto gr = n_greedy(inst);
          const auto ls = n_local_search(inst);
          CHECK(ex.count <= ls.count);
          CHECK(ls.count <= gr.count);
          CHECK(gr.count <= ex.count + 1);
          CHECK(meets_target(inst, gr.witness));
          CHECK(meets_target(inst, ls.witness));
          ++instances;
        }
      }
    }
  }
  CHECK(instances > 100);
}

TEST_CASE("exact search against subset enumeration at several worker counts") {
  Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    const int m = 2 + static_cast<int>(rng.below(2));
    const auto u = random_cover(rng, m, 1 + static_cast<int>(rng.below(2)), 4);
    const ShiftMeasure sys = random_markov(rng, m);
    const auto dj = dyn_join(u, 2).cover;
    if (dj.size() > 14) continue;
    for (double eps : {0.0, 0.1, 0.3}) {
      const auto inst = make_cover_instance(sys, dj, eps);
      const auto oracle = serial::n_exact(inst);
      for (int threads : {1, 4}) {
        set_worker_count(threads);
        const auto sol = n_exact(inst);
        CHECK(sol.count == oracle.count);
        CHECK(meets_target(inst, sol.witness));
      }
    }
  }
  set_worker_count(1);
}

TEST_CASE("epsilon monotonicity") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const auto u = random_cover(rng, 2, 2, 4);
    const ShiftMeasure sys = random_markov(rng, 2);
    const auto dj = dyn_join(u, 3).cover;
    std::size_t prev = 0;
    for (double eps : {0.6, 0.4, 0.2, 0.05, 0.0}) {
      const auto c = n_exact(make_cover_instance(sys, dj, eps)).count;
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("input validation and budgets") {
  CoverInstance bad;
  bad.atom_measures = {0.5, 0.4};
  bad.sets = {{0, 1}};
  bad.epsilon = 0.1;
  CHECK_THROWS_AS(n_exact(bad), InvalidInput);
  bad.atom_measures = {0.5, 0.5};
  bad.sets = {{0}};
  CHECK_THROWS_AS(n_exact(bad), InvalidInput);

  const Cover u(2, 2, {ws(2, 2, {"00", "01", "10"}), ws(2, 2, {"01", "10", "11"})});
  const auto inst = make_cover_instance(fair(), dyn_join(u, 9).cover, 0.2);
  SetCoverBudget b;
  b.max_nodes = 1000;
  CHECK_THROWS_AS(n_exact(inst, b), CapacityError);
  b = {};
  b.max_sets = 3;
  CHECK_THROWS_AS(n_exact(inst, b), CapacityError);
  const auto ls = n_local_search(inst);
  CHECK(meets_target(inst, ls.witness));
  CHECK(ls.count <= n_greedy(inst).count);
}
