#pragma once

#include <cstdint>
#include <random>

#include "caylab/field.hpp"

namespace caylab {

// Deterministic seeded randomness. Bounded draws go through below() rather
// than std::uniform_int_distribution so streams are identical across
// platforms and reports stay byte-reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}

  uint64_t u64() { return g_(); }
  uint64_t below(uint64_t n) { return n ? g_() % n : 0; }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  Fe fe(const Field& F) {
    if (F.finite()) return F.from_index(static_cast<unsigned>(below(F.order())));
    // Sampling over Q keeps numerators/denominators bounded by 20; small
    // denominators keep exact pipelines fast.
    return F.from_fraction(BigInt(range(-20, 20)), BigInt(range(1, 4)));
  }
  Fe fe_nonzero(const Field& F) {
    for (;;) {
      Fe x = fe(F);
      if (!x.is_zero()) return x;
    }
  }

  // Derived stream so suites can hand disjoint seeds to sub-tasks.
  static uint64_t derive(uint64_t seed, uint64_t salt) {
    uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace caylab
