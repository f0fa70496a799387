#include "coverent/parallel.hpp"

#include <omp.h>

#include <algorithm>

namespace coverent {

void set_worker_count(int workers) { omp_set_num_threads(std::max(1, workers)); }

int worker_count() { return omp_get_max_threads(); }

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, folded into the seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(seed ^ mix64(h));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return mix64(derive_seed(seed, label) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace coverent
