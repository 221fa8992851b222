#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "costmc/index_set.hpp"

namespace costmc {

// Deterministic generator for instance synthesis and the random row draw.
// Derivation of values from the raw mt19937_64 stream is done by hand so that
// results do not depend on the standard library's distribution internals.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  Index below(Index n) { return static_cast<Index>(next_u64() % static_cast<std::uint64_t>(n)); }

  long int_in(long lo, long hi) {
    return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double standard_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // k distinct values from {0,...,n-1}, returned sorted (partial Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index k) {
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < k; ++i) {
      const Index j = i + below(n - i);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace costmc
