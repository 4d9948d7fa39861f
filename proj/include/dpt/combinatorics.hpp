#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dpt/error.hpp"
#include "dpt/rational.hpp"

namespace dpt {

// C(n,k) exactly; throws NumericFailure if the value exceeds int64.
inline std::int64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  detail::int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::int64_t>::max()) throw NumericFailure("binomial overflow");
  }
  return static_cast<std::int64_t>(r);
}

// min(C(n,k), cap) without overflow; for size-cap checks.
inline std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  detail::int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap;
  }
  return static_cast<std::int64_t>(r);
}

// Pascal table with saturating entries, for hot-path lookups.
class BinomialTable {
 public:
  explicit BinomialTable(int n) : n_(n), rows_(n + 1) {
    constexpr std::int64_t kSat = std::numeric_limits<std::int64_t>::max() / 2;
    for (int i = 0; i <= n; ++i) {
      rows_[i].assign(i + 1, 1);
      for (int j = 1; j < i; ++j)
        rows_[i][j] = std::min(kSat, rows_[i - 1][j - 1] + rows_[i - 1][j]);
    }
  }

  std::int64_t operator()(int n, int k) const {
    if (n < 0 || k < 0 || k > n) return 0;
    return rows_[n][k];
  }

  int max_n() const { return n_; }

 private:
  int n_;
  std::vector<std::vector<std::int64_t>> rows_;
};

// Lexicographic rank (0-based) of an ascending 1-based k-combination of [n].
inline std::int64_t combination_rank(std::span<const std::int32_t> coords, int n,
                                     const BinomialTable& tab) {
  int k = static_cast<int>(coords.size());
  std::int64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < coords[i]; ++v) rank += tab(n - v, k - 1 - i);
    prev = coords[i];
  }
  return rank;
}

// Advances an ascending 1-based combination to its lex successor.
// Returns false (leaving c at the first combination) after the last one.
inline bool next_combination(std::vector<std::int32_t>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - (k - 1 - i)) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  for (int i = 0; i < k; ++i) c[i] = i + 1;
  return false;
}

inline std::vector<std::int32_t> first_combination(int k) {
  std::vector<std::int32_t> c(k);
  for (int i = 0; i < k; ++i) c[i] = i + 1;
  return c;
}

}  // namespace dpt
