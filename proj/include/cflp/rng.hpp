#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cflp {

// Seedable generator with explicit draw primitives. std::*_distribution is
// implementation-defined, so all draws go through next_u64() to keep runs
// reproducible across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::int64_t below(std::int64_t n) {
    const auto bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % bound);
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + below(hi - lo + 1);
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Independent child stream; tag separates siblings split from one state.
  Rng split(std::uint64_t tag) {
    return Rng(next_u64() ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::int64_t i = static_cast<std::int64_t>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)],
                v[static_cast<std::size_t>(below(i + 1))]);
    }
  }

  // First k elements of a random permutation of {0, ..., n-1}.
  std::vector<int> sample_without_replacement(int n, int k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    if (k > n) k = n;
    for (int i = 0; i < k; ++i) {
      const auto r = i + below(n - i);
      std::swap(pool[static_cast<std::size_t>(i)],
                pool[static_cast<std::size_t>(r)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace cflp
