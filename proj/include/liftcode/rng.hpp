#pragma once

// Deterministic randomness.  std::mt19937_64 output is pinned by the
// standard, so identical seeds give identical streams on every platform;
// bounded draws use mask rejection instead of std::uniform_int_distribution,
// whose mapping is implementation-defined and would break byte-identical
// reproducibility across standard libraries.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gf2e.hpp"

namespace liftcode::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-trial seed derivation: trial t of a run seeded with `master` uses
// splitmix64(master ^ splitmix64(t + 1)).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(trial + 1));
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, n) by mask rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Sampler::below: n must be > 0");
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t v;
    do {
      v = eng_() & mask;
    } while (v >= n);
    return v;
  }

  gf2e::Elem element(const gf2e::Field& F) {
    return static_cast<gf2e::Elem>(below(F.q()));
  }

  gf2e::Elem nonzero_element(const gf2e::Field& F) {
    return static_cast<gf2e::Elem>(1 + below(F.q() - 1));
  }

  std::vector<gf2e::Elem> point(int m, const gf2e::Field& F) {
    std::vector<gf2e::Elem> p(static_cast<std::size_t>(m));
    for (auto& x : p) x = element(F);
    return p;
  }

  // Uniform size-k subset of {0, ..., n-1}, returned sorted.
  std::vector<std::uint32_t> subset(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw std::invalid_argument("Sampler::subset: k > n");
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::uint32_t>(below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace liftcode::rng
