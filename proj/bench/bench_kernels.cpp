// Serial reference vs OpenMP kernel, one pair per hot loop. Thread count
// follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "coverent/assignment.hpp"
#include "coverent/combinatorics.hpp"
#include "coverent/cover.hpp"
#include "coverent/markov.hpp"
#include "coverent/serial.hpp"
#include "coverent/setcover.hpp"

using namespace coverent;

namespace {

const MarkovSystem& chain() {
  static const auto m = MarkovSystem::from_matrix({{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.3, 0.3, 0.4}});
  return m;
}

Cover overlap() {
  const auto a = WordSet::from_words(2, 2, std::vector<Word>{parse_word("00", 2), parse_word("01", 2), parse_word("10", 2)});
  const auto b = WordSet::from_words(2, 2, std::vector<Word>{parse_word("01", 2), parse_word("10", 2), parse_word("11", 2)});
  return Cover(2, 2, {a, b});
}

const ShiftMeasure& coin() {
  static const ShiftMeasure s = MarkovSystem::bernoulli({0.5, 0.5});
  return s;
}

void BM_cylinder_measures_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::cylinder_measures(chain(), static_cast<int>(st.range(0))));
}
void BM_cylinder_measures_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(cylinder_measures(chain(), static_cast<int>(st.range(0))));
}
BENCHMARK(BM_cylinder_measures_serial)->Arg(10)->Arg(13);
BENCHMARK(BM_cylinder_measures_parallel)->Arg(10)->Arg(13);

void BM_dyn_join_serial(benchmark::State& st) {
  const auto u = overlap();
  for (auto _ : st) benchmark::DoNotOptimize(serial::dyn_join(u, static_cast<int>(st.range(0))));
}
void BM_dyn_join_parallel(benchmark::State& st) {
  const auto u = overlap();
  for (auto _ : st) benchmark::DoNotOptimize(dyn_join(u, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_dyn_join_serial)->Arg(6)->Arg(9);
BENCHMARK(BM_dyn_join_parallel)->Arg(6)->Arg(9);

AssignmentSpace free_space() {
  const auto j = dyn_join(overlap(), 3);
  return make_assignment_space(coin(), j.cover, j.cover.depth());
}

void BM_exact_free_search_serial(benchmark::State& st) {
  const auto s = free_space();
  for (auto _ : st) benchmark::DoNotOptimize(serial::exact_free_search(s));
}
void BM_exact_free_search_parallel(benchmark::State& st) {
  const auto s = free_space();
  for (auto _ : st) benchmark::DoNotOptimize(exact_free_search(s));
}
BENCHMARK(BM_exact_free_search_serial);
BENCHMARK(BM_exact_free_search_parallel);

CoverInstance cover_instance() {
  const auto j = dyn_join(overlap(), 5);
  return make_cover_instance(coin(), j.cover, 0.2);
}

void BM_n_exact_serial(benchmark::State& st) {
  const auto inst = cover_instance();
  for (auto _ : st) benchmark::DoNotOptimize(serial::n_exact(inst));
}
void BM_n_exact_parallel(benchmark::State& st) {
  const auto inst = cover_instance();
  for (auto _ : st) benchmark::DoNotOptimize(n_exact(inst));
}
BENCHMARK(BM_n_exact_serial);
BENCHMARK(BM_n_exact_parallel);

const std::vector<double> kUniform(4, 0.25);

void BM_packing_census_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::packing_census(2, 2, static_cast<int>(st.range(0)), 0.25, kUniform));
}
void BM_packing_census_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(packing_census(2, 2, static_cast<int>(st.range(0)), 0.25, kUniform));
}
BENCHMARK(BM_packing_census_serial)->Arg(12)->Arg(14);
BENCHMARK(BM_packing_census_parallel)->Arg(12)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
