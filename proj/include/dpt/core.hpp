#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpt/error.hpp"
#include "dpt/rational.hpp"

namespace dpt {

// A subset of the ground set [n] = {1,...,n}, stored as ascending 1-based
// coordinates.
class Subset {
 public:
  Subset() : n_(0) {}
  Subset(std::vector<std::int32_t> coords, std::int32_t n) : coords_(std::move(coords)), n_(n) {
    if (n < 0) throw InvalidArgument("subset: negative ground size");
    std::sort(coords_.begin(), coords_.end());
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      if (coords_[j] < 1 || coords_[j] > n) throw InvalidArgument("subset: coordinate out of range");
      if (j > 0 && coords_[j] == coords_[j - 1])
        throw InvalidArgument("subset: duplicate coordinate");
    }
  }

  std::int32_t n() const { return n_; }
  std::int32_t size() const { return static_cast<std::int32_t>(coords_.size()); }
  std::span<const std::int32_t> coords() const { return coords_; }
  std::int32_t coord(std::int32_t j) const { return coords_[j]; }

  bool contains(std::int32_t i) const {
    return std::binary_search(coords_.begin(), coords_.end(), i);
  }

  // Position of coordinate i in ascending order, or -1.
  std::int32_t position_of(std::int32_t i) const {
    auto it = std::lower_bound(coords_.begin(), coords_.end(), i);
    if (it == coords_.end() || *it != i) return -1;
    return static_cast<std::int32_t>(it - coords_.begin());
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.coords_ == b.coords_;
  }

 private:
  std::vector<std::int32_t> coords_;
  std::int32_t n_;
};

// A family of subsets of [n]. Duplicate sets are permitted (the family is a
// multiset); order is significant and set indices are 0-based.
class Domain {
 public:
  Domain(std::int32_t n, std::vector<Subset> sets) : n_(n), sets_(std::move(sets)) {
    if (n < 1) throw InvalidArgument("domain: ground size must be >= 1");
    coord_index_.resize(n + 1);
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (sets_[s].n() != n) throw InvalidArgument("domain: subset over wrong ground set");
      for (std::int32_t i : sets_[s].coords())
        coord_index_[i].push_back(static_cast<std::int32_t>(s));
    }
  }

  std::int32_t n() const { return n_; }
  std::int64_t size() const { return static_cast<std::int64_t>(sets_.size()); }
  const Subset& set(std::int64_t s) const { return sets_[s]; }
  const std::vector<Subset>& sets() const { return sets_; }

  // Indices of the sets containing coordinate i (the sub-domain V_i).
  std::span<const std::int32_t> sets_in(std::int32_t i) const {
    if (i < 1 || i > n_) throw InvalidArgument("domain: coordinate out of range");
    return coord_index_[i];
  }

  bool covers(std::int32_t i) const { return !sets_in(i).empty(); }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.n_ == b.n_ && a.sets_ == b.sets_;
  }

 private:
  std::int32_t n_;
  std::vector<Subset> sets_;
  std::vector<std::vector<std::int32_t>> coord_index_;
};

using DomainPtr = std::shared_ptr<const Domain>;

// A global assignment a : [n] -> {0,1}.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
      if (b > 1) throw InvalidArgument("assignment: bits must be 0/1");
  }
  static Assignment zeros(std::int32_t n) { return Assignment(std::vector<std::uint8_t>(n, 0)); }

  std::int32_t n() const { return static_cast<std::int32_t>(bits_.size()); }
  std::uint8_t bit(std::int32_t i) const { return bits_[i - 1]; }  // 1-based coordinate
  void set_bit(std::int32_t i, std::uint8_t v) { bits_[i - 1] = v; }
  void flip_bit(std::int32_t i) { bits_[i - 1] ^= 1; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// A local assignment on one set: bit j corresponds to the set's j-th smallest
// coordinate.
class LocalAssignment {
 public:
  LocalAssignment() = default;
  explicit LocalAssignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
      if (b > 1) throw InvalidArgument("local assignment: bits must be 0/1");
  }

  std::int32_t size() const { return static_cast<std::int32_t>(bits_.size()); }
  std::uint8_t bit(std::int32_t j) const { return bits_[j]; }
  void set_bit(std::int32_t j, std::uint8_t v) { bits_[j] = v; }
  void flip_bit(std::int32_t j) { bits_[j] ^= 1; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const LocalAssignment&, const LocalAssignment&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline LocalAssignment restrict_to(const Assignment& a, const Subset& s) {
  std::vector<std::uint8_t> bits(s.size());
  for (std::int32_t j = 0; j < s.size(); ++j) bits[j] = a.bit(s.coord(j));
  return LocalAssignment(std::move(bits));
}

// A table F : V -> local assignments, i.e. a word of the direct product code's
// ambient space.
class DPTable {
 public:
  DPTable(DomainPtr dom, std::vector<LocalAssignment> values)
      : dom_(std::move(dom)), values_(std::move(values)) {
    if (!dom_) throw InvalidArgument("dp table: null domain");
    if (static_cast<std::int64_t>(values_.size()) != dom_->size())
      throw InvalidArgument("dp table: one local assignment per set required");
    for (std::int64_t s = 0; s < dom_->size(); ++s)
      if (values_[s].size() != dom_->set(s).size())
        throw InvalidArgument("dp table: local assignment length mismatch");
  }

  const DomainPtr& domain() const { return dom_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  const LocalAssignment& value(std::int64_t s) const { return values_[s]; }
  LocalAssignment& value(std::int64_t s) { return values_[s]; }

  bool same_domain(const DPTable& other) const {
    return dom_ == other.dom_ || *dom_ == *other.dom_;
  }

 private:
  DomainPtr dom_;
  std::vector<LocalAssignment> values_;
};

// Direct product encoding: S -> a|_S.
inline DPTable dp_encode(const Assignment& a, DomainPtr dom) {
  if (!dom) throw InvalidArgument("dp_encode: null domain");
  if (a.n() != dom->n()) throw InvalidArgument("dp_encode: assignment length != ground size");
  std::vector<LocalAssignment> values;
  values.reserve(dom->size());
  for (std::int64_t s = 0; s < dom->size(); ++s) values.push_back(restrict_to(a, dom->set(s)));
  return DPTable(std::move(dom), std::move(values));
}

// Fraction of sets on which the two tables disagree (as whole local
// assignments). A pseudometric on tables over equal domains.
inline Rational dp_distance(const DPTable& f, const DPTable& g) {
  if (!f.same_domain(g)) throw InvalidArgument("dp_distance: tables over different domains");
  std::int64_t n_sets = f.size();
  if (n_sets == 0) throw InvalidArgument("dp_distance: empty domain");
  std::int64_t diff = 0;
  for (std::int64_t s = 0; s < n_sets; ++s)
    if (!(f.value(s) == g.value(s))) ++diff;
  return Rational(diff, n_sets);
}

struct ClosestCodeword {
  Assignment assignment;
  Rational distance;
};

// Brute-force nearest codeword; ties go to the lexicographically smallest
// assignment read a_1 a_2 ... a_n. Runs in 2^n * |V| steps, n <= 24.
inline ClosestCodeword closest_codeword(const DPTable& f) {
  const Domain& dom = *f.domain();
  std::int32_t n = dom.n();
  if (n > 24) throw UnsupportedSize("closest_codeword: ground set larger than 24");
  std::int64_t n_sets = dom.size();
  if (n_sets == 0) throw InvalidArgument("closest_codeword: empty domain");

  // Pack each set into a coordinate mask and expected-bit pattern, with
  // coordinate i at bit n-i so that ascending x enumerates assignments in
  // lexicographic order.
  std::vector<std::uint32_t> mask(n_sets, 0), expect(n_sets, 0);
  for (std::int64_t s = 0; s < n_sets; ++s) {
    const Subset& sub = dom.set(s);
    for (std::int32_t j = 0; j < sub.size(); ++j) {
      std::uint32_t pos = static_cast<std::uint32_t>(n - sub.coord(j));
      mask[s] |= (1u << pos);
      if (f.value(s).bit(j)) expect[s] |= (1u << pos);
    }
  }

  std::int64_t best_count = n_sets + 1;
  std::uint32_t best_x = 0;
  const std::uint32_t limit_hi = (n == 32) ? 0 : (1u << n);
  for (std::uint32_t x = 0; x != limit_hi; ++x) {
    std::int64_t count = 0;
    for (std::int64_t s = 0; s < n_sets; ++s) count += (((x ^ expect[s]) & mask[s]) != 0);
    if (count < best_count) {
      best_count = count;
      best_x = x;
      if (count == 0) break;
    }
  }

  std::vector<std::uint8_t> bits(n);
  for (std::int32_t i = 1; i <= n; ++i) bits[i - 1] = (best_x >> (n - i)) & 1u;
  return {Assignment(std::move(bits)), Rational(best_count, n_sets)};
}

}  // namespace dpt
