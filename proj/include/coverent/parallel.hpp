#pragma once

#include <cstdint>
#include <string_view>

namespace coverent {

// Number of OpenMP workers used by the parallel kernels. Results never
// depend on this value.
void set_worker_count(int workers);
int worker_count();

// Stateless 64-bit mixer (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

// Seed for a named sub-computation, derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index);

// Small deterministic generator used everywhere randomness is needed.
// Independent of the standard library's distribution implementations so
// streams are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return bound == 0 ? 0 : static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace coverent
