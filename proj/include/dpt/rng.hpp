#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dpt {

// splitmix64; used to derive independent streams from one user seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// Uniform draw from [0, n) by rejection; bit-reproducible across platforms,
// unlike std::uniform_int_distribution.
inline std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = eng();
    if (r >= threshold) return r % n;
  }
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& eng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(eng, i)]);
}

// First m entries of a random permutation of {0,...,n-1}.
inline std::vector<std::int64_t> sample_without_replacement(std::int64_t n, std::int64_t m,
                                                            std::mt19937_64& eng) {
  std::vector<std::int64_t> pool(n);
  for (std::int64_t i = 0; i < n; ++i) pool[i] = i;
  for (std::int64_t i = 0; i < m; ++i)
    std::swap(pool[i], pool[i + static_cast<std::int64_t>(bounded(eng, n - i))]);
  pool.resize(m);
  return pool;
}

}  // namespace dpt
