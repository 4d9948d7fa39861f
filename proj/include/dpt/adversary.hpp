#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"

namespace dpt {

namespace detail {

inline void flip_with_nonzero_mask(LocalAssignment& value, std::mt19937_64& eng) {
  std::int32_t k = value.size();
  if (k == 0) throw InvalidArgument("adversary: cannot corrupt an empty set");
  if (k <= 63) {
    std::uint64_t mask = 1 + bounded(eng, (std::uint64_t(1) << k) - 1);
    for (std::int32_t j = 0; j < k; ++j)
      if ((mask >> j) & 1) value.flip_bit(j);
    return;
  }
  for (;;) {
    std::vector<std::uint8_t> mask(k);
    bool nonzero = false;
    for (std::int32_t j = 0; j < k; ++j) {
      mask[j] = static_cast<std::uint8_t>(bounded(eng, 2));
      nonzero |= mask[j];
    }
    if (!nonzero) continue;
    for (std::int32_t j = 0; j < k; ++j)
      if (mask[j]) value.flip_bit(j);
    return;
  }
}

}  // namespace detail

// Replaces ceil(delta |V|) distinct sets of DP(a) with uniformly random
// different local assignments, so the planted distance is exactly
// ceil(delta |V|) / |V|.
inline DPTable corrupt_random_sets(const Assignment& a, DomainPtr dom, const Rational& delta,
                                   std::uint64_t seed) {
  if (!dom || dom->size() == 0) throw InvalidArgument("corrupt_random_sets: empty domain");
  if (delta.sign() < 0 || delta > Rational(1))
    throw InvalidArgument("corrupt_random_sets: delta outside [0,1]");
  DPTable f = dp_encode(a, dom);
  std::int64_t m = ceil_times(delta, dom->size());
  auto eng = make_engine(seed, 0);
  auto chosen = sample_without_replacement(dom->size(), m, eng);
  for (std::int64_t s : chosen) detail::flip_with_nonzero_mask(f.value(s), eng);
  return f;
}

// Flips one uniformly random position in every set, leaving a table at the
// maximum distance 1 from DP(a) while each local assignment is still nearly
// correct.
inline DPTable per_set_single_flip(const Assignment& a, DomainPtr dom, std::uint64_t seed) {
  if (!dom || dom->size() == 0) throw InvalidArgument("per_set_single_flip: empty domain");
  DPTable f = dp_encode(a, dom);
  auto eng = make_engine(seed, 0);
  for (std::int64_t s = 0; s < dom->size(); ++s) {
    std::int32_t k = f.value(s).size();
    if (k == 0) throw InvalidArgument("per_set_single_flip: empty set in domain");
    f.value(s).flip_bit(static_cast<std::int32_t>(bounded(eng, k)));
  }
  return f;
}

// Flips coordinate i on the chosen sets B_i, all of which must contain i.
inline DPTable coordinate_cluster_flip(const Assignment& a, DomainPtr dom, std::int32_t i,
                                       std::span<const std::int64_t> b_sets) {
  if (!dom || dom->size() == 0) throw InvalidArgument("coordinate_cluster_flip: empty domain");
  if (i < 1 || i > dom->n()) throw InvalidArgument("coordinate_cluster_flip: coordinate out of range");
  DPTable f = dp_encode(a, dom);
  std::vector<char> seen(dom->size(), 0);
  for (std::int64_t s : b_sets) {
    if (s < 0 || s >= dom->size())
      throw InvalidArgument("coordinate_cluster_flip: set index out of range");
    if (seen[s]) throw InvalidArgument("coordinate_cluster_flip: duplicate set index");
    seen[s] = 1;
    std::int32_t pos = dom->set(s).position_of(i);
    if (pos < 0) throw InvalidArgument("coordinate_cluster_flip: set does not contain coordinate");
    f.value(s).flip_bit(pos);
  }
  return f;
}

}  // namespace dpt
