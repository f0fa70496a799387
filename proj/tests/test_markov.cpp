#include <doctest.h>

#include <cmath>
#include <vector>

#include "coverent/errors.hpp"
#include "coverent/markov.hpp"
#include "coverent/parallel.hpp"
#include "coverent/random_instances.hpp"
#include "coverent/serial.hpp"

using namespace coverent;

namespace {
Word w(const char* s, int m = 2) { return parse_word(s, m); }
}  // namespace

TEST_CASE("stationary vector") {
  SUBCASE("symmetric chain") {
    const auto pi = stationary_of({{0.5, 0.5}, {0.5, 0.5}});
    CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("balance equations by hand") {
    // pi0 * 0.1 = pi1 * 0.5 and pi0 + pi1 = 1
    const auto pi = stationary_of({{0.9, 0.1}, {0.5, 0.5}});
    CHECK(std::abs(pi[0] - 5.0 / 6.0) < 1e-12);
    CHECK(std::abs(pi[1] - 1.0 / 6.0) < 1e-12);
  }
  SUBCASE("reducible chain is rejected") {
    CHECK_THROWS_AS(stationary_of({{1.0, 0.0}, {0.0, 1.0}}), InvalidInput);
  }
  SUBCASE("periodic chain is rejected without an explicit stationary vector") {
    CHECK_THROWS_AS(stationary_of({{0.0, 1.0}, {1.0, 0.0}}), InvalidInput);
    CHECK_NOTHROW(MarkovSystem(2, {0.0, 1.0, 1.0, 0.0}, {0.5, 0.5}));
  }
  SUBCASE("non-stochastic rows are rejected") {
    CHECK_THROWS_AS(MarkovSystem::from_matrix({{0.5, 0.4}, {0.5, 0.5}}), InvalidInput);
    CHECK_THROWS_AS(MarkovSystem::from_matrix({{1.2, -0.2}, {0.5, 0.5}}), InvalidInput);
  }
  SUBCASE("stationary vector must be invariant") {
    CHECK_THROWS_AS(MarkovSystem(2, {0.9, 0.1, 0.5, 0.5}, {0.5, 0.5}), InvalidInput);
  }
}

TEST_CASE("word measures") {
  const auto fair = MarkovSystem::bernoulli({0.5, 0.5});
  CHECK(word_measure(fair, w("010")) == doctest::Approx(0.125));
  const auto chain = MarkovSystem::from_matrix({{0.9, 0.1}, {0.5, 0.5}});
  CHECK(std::abs(word_measure(chain, w("01")) - 1.0 / 12.0) < 1e-12);
  CHECK(std::abs(word_measure(chain, w("1")) - 1.0 / 6.0) < 1e-12);

  const ShiftMeasure sys = fair;
  const std::vector<Word> three{w("00"), w("01"), w("10")};
  CHECK(set_measure(sys, three) == doctest::Approx(0.75));
  CHECK(set_measure(sys, std::vector<Word>{}) == 0.0);
  const std::vector<Word> mixed{w("0"), w("01")};
  CHECK_THROWS_AS(set_measure(sys, mixed), InvalidInput);
}

TEST_CASE("word parsing names the bad word") {
  try {
    parse_word("0120", 2);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("0120") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_word("", 2), InvalidInput);
  CHECK(w("0121", 3).str() == "0121");
  CHECK(word_index(w("101"), 2) == 5);
  CHECK(word_at(5, 3, 2) == w("101"));
}

TEST_CASE("cylinder totals and shift invariance") {
  Rng rng(17);
  for (int m = 2; m <= 4; ++m) {
    const auto chain = random_markov(rng, m);
    for (int d = 1; d <= (m == 2 ? 12 : 6); ++d) {
      const auto cyl = cylinder_measures(chain, d);
      double total = 0.0;
      for (double x : cyl) total += x;
      CHECK(std::abs(total - 1.0) < 1e-10);
    }
    // Summing out the first or the last symbol of depth-4 words gives depth 3.
    const auto c3 = cylinder_measures(chain, 3);
    const auto c4 = cylinder_measures(chain, 4);
    const auto n3 = c3.size();
    for (AtomIndex x = 0; x < n3; ++x) {
      double prefix_sum = 0.0, suffix_sum = 0.0;
      for (int a = 0; a < m; ++a) {
        prefix_sum += c4[static_cast<AtomIndex>(a) * n3 + x];
        suffix_sum += c4[x * static_cast<AtomIndex>(m) + static_cast<AtomIndex>(a)];
      }
      CHECK(std::abs(prefix_sum - c3[x]) < 1e-10);
      CHECK(std::abs(suffix_sum - c3[x]) < 1e-10);
    }
  }
}

TEST_CASE("parallel cylinder measures match the serial reference") {
  Rng rng(3);
  for (int m = 2; m <= 3; ++m) {
    const auto chain = random_markov(rng, m);
    for (int d = 1; d <= 8; ++d) {
      const auto a = cylinder_measures(chain, d);
      const auto b = serial::cylinder_measures(chain, d);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-15);
    }
  }
}

TEST_CASE("mixture measures are the weighted component measures") {
  const auto a = MarkovSystem::bernoulli({0.5, 0.5});
  const auto b = MarkovSystem::from_matrix({{0.9, 0.1}, {0.5, 0.5}});
  const ShiftMeasure mix = MixtureSystem({a, b}, {0.3, 0.7});
  const auto cm = mix.cylinder_measures(4);
  const auto ca = cylinder_measures(a, 4);
  const auto cb = cylinder_measures(b, 4);
  for (std::size_t i = 0; i < cm.size(); ++i) CHECK(std::abs(cm[i] - (0.3 * ca[i] + 0.7 * cb[i])) < 1e-15);
  CHECK_THROWS_AS(MixtureSystem({a, b}, {0.3, 0.6}), InvalidInput);
}

TEST_CASE("orbit sampling") {
  const ShiftMeasure degenerate = MarkovSystem::bernoulli({1.0, 0.0});
  const auto zeros = sample_orbit(degenerate, 50, 1);
  for (auto s : zeros.symbols) CHECK(s == 0);

  const ShiftMeasure chain = MarkovSystem::from_matrix({{0.9, 0.1}, {0.5, 0.5}});
  CHECK(sample_orbit(chain, 1000, 42) == sample_orbit(chain, 1000, 42));
  CHECK(sample_orbit(chain, 1, 9).depth() == 1);

  // Frequencies approach pi = (5/6, 1/6); the standard error at K = 2e5 is
  // well below 0.01 even with the chain's correlation.
  const auto long_orbit = sample_orbit(chain, 200000, 7);
  double ones = 0.0;
  for (auto s : long_orbit.symbols) ones += s;
  CHECK(std::abs(ones / 200000.0 - 1.0 / 6.0) < 0.01);
}

TEST_CASE("block system") {
  const auto chain = MarkovSystem::from_matrix({{0.9, 0.1}, {0.5, 0.5}});
  const auto blocks = block_system(chain, 2);
  CHECK(blocks.alphabet_size() == 4);
  // A block word of length 2 is a base word of length 4.
  const auto base = cylinder_measures(chain, 4);
  const auto blocked = cylinder_measures(blocks, 2);
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(std::abs(base[i] - blocked[i]) < 1e-12);
  CHECK(std::abs(blocks.entropy_rate() - 2.0 * chain.entropy_rate()) < 1e-12);
}
