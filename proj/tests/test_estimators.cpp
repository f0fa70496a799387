#include <doctest.h>

#include <cmath>

#include "coverent/combinatorics.hpp"
#include "coverent/errors.hpp"
#include "coverent/estimators.hpp"

using namespace coverent;

namespace {

Cover overlap_cover() {
  const auto a = WordSet::from_words(2, 2, std::vector<Word>{parse_word("00", 2), parse_word("01", 2), parse_word("10", 2)});
  const auto b = WordSet::from_words(2, 2, std::vector<Word>{parse_word("01", 2), parse_word("10", 2), parse_word("11", 2)});
  return Cover(2, 2, {a, b});
}

const MarkovSystem kChain = MarkovSystem::from_matrix({{0.9, 0.1}, {0.5, 0.5}});

}  // namespace

TEST_CASE("trivial cover has zero entropy in every notion") {
  const ShiftMeasure sys = MarkovSystem::bernoulli({0.3, 0.7});
  const auto u = Cover::trivial(2, 1);
  for (const auto& r : h_minus_trace(sys, u, 5).records) CHECK(std::abs(r.value) < 1e-12);
  for (const auto& r : h_plus_trace(sys, u, 5, 1).records) CHECK(std::abs(r.value) < 1e-12);
  for (const auto& r : h_e_trace(sys, u, 0.2, 5).records) CHECK(r.value == 0.0);
  for (const auto& r : h_c_trace(u, 5).records) CHECK(r.value == 0.0);
}

TEST_CASE("generating partition of a fair coin") {
  const ShiftMeasure sys = MarkovSystem::bernoulli({0.5, 0.5});
  const auto u = Cover::cylinders(2, 1);
  const auto t = h_minus_trace(sys, u, 10);
  CHECK(t.records.size() == 10);
  for (const auto& r : t.records) {
    CHECK(r.method == Method::exact);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
  }
  CHECK(t.monotone);
  CHECK_THROWS_AS(t.at(11), std::out_of_range);

  // Uniform on 4096 words: more than three quarters needs 3073 of them.
  const auto e = h_e_trace(sys, u, 0.25, 12);
  CHECK(e.at(12).aux == 3073.0);
  CHECK(std::abs(e.at(12).value - std::log2(3073.0) / 12.0) < 1e-12);
  CHECK(std::abs(e.at(12).value - 0.965453) < 1e-6);

  const auto lo = h_e_trace(sys, u, 0.5, 12);
  const auto hi = h_e_trace(sys, u, 0.1, 12);
  CHECK(hi.at(12).value >= e.at(12).value);
  CHECK(e.at(12).value >= lo.at(12).value);
  CHECK(hi.at(12).value - lo.at(12).value < 0.08);
}

TEST_CASE("two-state chain against the closed form") {
  const ShiftMeasure sys = kChain;
  const double h0 = binary_entropy(1.0 / 6.0);
  const double rate = 5.0 / 6.0 * binary_entropy(0.1) + 1.0 / 6.0;
  const auto t = h_minus_trace(sys, Cover::cylinders(2, 1), 12);
  for (int n = 1; n <= 12; ++n) CHECK(std::abs(t.at(n).value - (h0 + (n - 1) * rate) / n) < 1e-10);
  CHECK(t.monotone);
  // The conditional increment is the rate from n = 2 on.
  const auto p = h_plus_trace(sys, Cover::cylinders(2, 1), 6, 1);
  for (int n = 2; n <= 6; ++n) CHECK(std::abs(p.at(n).value - rate) < 1e-10);
}

TEST_CASE("topological count of the full shift") {
  for (int m : {2, 3}) {
    const auto t = h_c_trace(Cover::cylinders(m, 1), 8);
    for (const auto& r : t.records) {
      CHECK(r.aux == std::pow(static_cast<double>(m), r.n));
      CHECK(std::abs(r.value - std::log2(static_cast<double>(m))) < 1e-12);
    }
  }
}

TEST_CASE("notions are ordered on a small overlap cover") {
  const ShiftMeasure sys = MarkovSystem::bernoulli({0.5, 0.5});
  const auto u = overlap_cover();
  const auto minus = h_minus_trace(sys, u, 6);
  const auto c = h_c_trace(u, 6);
  const auto e = h_e_trace(sys, u, 0.2, 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(minus.at(n).value <= c.at(n).value + 1e-12);
    CHECK(e.at(n).value <= c.at(n).value + 1e-12);
  }
  // N(U_0^{n-1}, 0.2) for n = 5, 6, from an independent integer program.
  CHECK(e.at(5).aux == 4.0);
  CHECK(e.at(6).aux == 5.0);
}

TEST_CASE("decomposition") {
  const auto u = Cover::cylinders(2, 1);
  SUBCASE("one component has no gap") {
    const MixtureSystem mix({kChain}, {1.0});
    for (auto notion : {Notion::h_minus, Notion::h_plus}) {
      const auto d = decompose(mix, u, 5, notion, 1);
      CHECK(std::abs(d.gap) < 1e-12);
    }
  }
  SUBCASE("duplicated component has no gap") {
    const MixtureSystem mix({kChain, kChain}, {0.3, 0.7});
    const auto d = decompose(mix, u, 6, Notion::h_minus);
    CHECK(std::abs(d.gap) < 1e-12);
    CHECK(d.component_values.size() == 2);
  }
  SUBCASE("distinct components: gap at most H(w) / n") {
    const MixtureSystem mix({MarkovSystem::bernoulli({0.5, 0.5}), MarkovSystem::bernoulli({0.9, 0.1})}, {0.5, 0.5});
    for (int n : {2, 4, 8}) {
      const auto d = decompose(mix, u, n, Notion::h_minus);
      CHECK(d.gap >= -1e-12);
      CHECK(d.gap <= 1.0 / n + 1e-12);
      CHECK(d.weighted_sum == doctest::Approx(0.5 * d.component_values[0] + 0.5 * d.component_values[1]));
    }
  }
}

TEST_CASE("block cover reads n blocks as nm steps") {
  const auto u = overlap_cover();
  const auto b = block_cover(u, 2);
  CHECK(b.alphabet_size() == 4);
  CHECK(b.depth() == 2);
  const ShiftMeasure sys = kChain;
  const ShiftMeasure blocks = block_system(kChain, 2);
  const auto small = h_minus_trace(sys, u, 6);
  const auto big = h_minus_trace(blocks, b, 3);
  for (int n = 1; n <= 3; ++n) {
    if (small.at(2 * n).method == Method::exact && big.at(n).method == Method::exact) {
      CHECK(std::abs(big.at(n).value - 2.0 * small.at(2 * n).value) < 1e-9);
    }
  }
  CHECK(block_cover(u, 1).depth() == u.depth());
}

TEST_CASE("budget breaches") {
  const ShiftMeasure sys = MarkovSystem::bernoulli({0.5, 0.5});
  EstimatorConfig cfg;
  cfg.join.max_candidate_names = 64;
  CHECK_THROWS_AS(h_minus_trace(sys, Cover::cylinders(2, 1), 10, cfg), CapacityError);
  cfg.allow_partial = true;
  const auto t = h_minus_trace(sys, Cover::cylinders(2, 1), 10, cfg);
  REQUIRE(t.truncation);
  CHECK(t.truncation->at_n == static_cast<int>(t.records.size()) + 1);
  CHECK(t.records.size() < 10);
  CHECK_FALSE(t.truncation->reason.empty());
}

TEST_CASE("notion names") {
  for (auto n : {Notion::h_minus, Notion::h_plus, Notion::h_e, Notion::h_c}) CHECK(parse_notion(notion_name(n)) == n);
  CHECK_THROWS_AS(parse_notion("h_star"), InvalidInput);
}
