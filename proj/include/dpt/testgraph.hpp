#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "dpt/combinatorics.hpp"
#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/rng.hpp"

namespace dpt {

// Weighted undirected test graph over a domain's sets, in CSR form. Rows are
// sorted by neighbor index; self loops are single entries. An empty weight
// array means all weights are 1.
class TestGraph {
 public:
  static constexpr std::int64_t kMaxVertices = 200000;
  static constexpr std::int64_t kMaxEntries = 30000000;

  struct unchecked_t {};

  TestGraph(DomainPtr dom, std::vector<std::uint64_t> offsets, std::vector<std::uint32_t> nbr,
            std::vector<std::int32_t> wt)
      : TestGraph(std::move(dom), std::move(offsets), std::move(nbr), std::move(wt),
                  unchecked_t{}) {
    validate();
  }

  TestGraph(DomainPtr dom, std::vector<std::uint64_t> offsets, std::vector<std::uint32_t> nbr,
            std::vector<std::int32_t> wt, unchecked_t)
      : dom_(std::move(dom)),
        offsets_(std::move(offsets)),
        nbr_(std::move(nbr)),
        wt_(std::move(wt)) {
    if (!dom_) throw InvalidArgument("test graph: null domain");
    finish();
  }

  const DomainPtr& domain() const { return dom_; }
  std::int64_t size() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }
  std::int64_t entry_count() const { return static_cast<std::int64_t>(nbr_.size()); }

  std::int64_t row_size(std::int64_t s) const {
    return static_cast<std::int64_t>(offsets_[s + 1] - offsets_[s]);
  }
  std::span<const std::uint32_t> row_neighbors(std::int64_t s) const {
    return {nbr_.data() + offsets_[s], static_cast<std::size_t>(row_size(s))};
  }
  std::int32_t row_weight(std::int64_t s, std::int64_t j) const {
    return wt_.empty() ? 1 : wt_[offsets_[s] + j];
  }

  std::int64_t degree(std::int64_t s) const { return degree_[s]; }
  // Total weight over ordered picks (s, s'), i.e. the sum of all degrees.
  std::int64_t total_weight() const { return total_weight_; }

  bool is_regular() const { return regular_; }
  std::int64_t regular_degree() const {
    if (!regular_) throw InvalidGraph("graph is not regular");
    return degree_.empty() ? 0 : degree_[0];
  }

  std::int32_t edge_weight(std::int64_t s, std::int64_t t) const {
    auto row = row_neighbors(s);
    auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(t));
    if (it == row.end() || *it != static_cast<std::uint32_t>(t)) return 0;
    return row_weight(s, it - row.begin());
  }

  bool connected() const {
    std::int64_t n_v = size();
    if (n_v == 0) return true;
    std::vector<char> seen(n_v, 0);
    std::vector<std::int64_t> stack{0};
    seen[0] = 1;
    std::int64_t reached = 1;
    while (!stack.empty()) {
      std::int64_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t v : row_neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    return reached == n_v;
  }

 private:
  void finish() {
    std::int64_t n_v = size();
    if (n_v != dom_->size()) throw InvalidArgument("test graph: offsets do not match domain size");
    if (n_v > kMaxVertices) throw UnsupportedSize("test graph: vertex cap exceeded");
    if (entry_count() > kMaxEntries) throw UnsupportedSize("test graph: edge cap exceeded");
    if (!wt_.empty() && wt_.size() != nbr_.size())
      throw InvalidArgument("test graph: weight array length mismatch");
    degree_.resize(n_v);
    total_weight_ = 0;
    for (std::int64_t s = 0; s < n_v; ++s) {
      std::int64_t d = 0;
      for (std::int64_t j = 0; j < row_size(s); ++j) d += row_weight(s, j);
      degree_[s] = d;
      total_weight_ += d;
    }
    regular_ = true;
    for (std::int64_t s = 1; s < n_v; ++s)
      if (degree_[s] != degree_[0]) {
        regular_ = false;
        break;
      }
  }

  void validate() const {
    std::int64_t n_v = size();
    for (std::int64_t s = 0; s < n_v; ++s) {
      auto row = row_neighbors(s);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] >= static_cast<std::uint64_t>(n_v))
          throw InvalidArgument("test graph: neighbor out of range");
        if (j > 0 && row[j] <= row[j - 1])
          throw InvalidArgument("test graph: row not strictly sorted");
        if (row_weight(s, j) <= 0) throw InvalidArgument("test graph: non-positive weight");
      }
    }
    for (std::int64_t s = 0; s < n_v; ++s) {
      auto row = row_neighbors(s);
      for (std::size_t j = 0; j < row.size(); ++j) {
        std::int64_t t = row[j];
        if (edge_weight(t, s) != row_weight(s, j))
          throw InvalidArgument("test graph: asymmetric adjacency");
      }
    }
  }

  DomainPtr dom_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> nbr_;
  std::vector<std::int32_t> wt_;
  std::vector<std::int64_t> degree_;
  std::int64_t total_weight_ = 0;
  bool regular_ = false;
};

namespace detail {

inline void check_caps(std::int64_t vertices, std::int64_t entries) {
  if (vertices > TestGraph::kMaxVertices)
    throw UnsupportedSize("graph family: vertex cap 200000 exceeded");
  if (entries > TestGraph::kMaxEntries)
    throw UnsupportedSize("graph family: adjacency entry cap exceeded");
}

}  // namespace detail

// Johnson-style graph J(n,k,t): all k-subsets of [n], S ~ S' iff |S and S'| = t.
// Unit weights, no self loops.
inline TestGraph build_johnson(std::int32_t n, std::int32_t k, std::int32_t t) {
  if (n < 1 || k < 1 || k > n || t < 0 || t >= k)
    throw InvalidArgument("johnson: need 1 <= k <= n and 0 <= t < k");
  std::int64_t n_sets = binomial_capped(n, k, TestGraph::kMaxVertices + 1);
  detail::check_caps(n_sets, 0);
  std::int64_t kept_count = binomial(k, t);
  std::int64_t added_count = (k - t > n - k) ? 0 : binomial(n - k, k - t);
  std::int64_t deg = kept_count * added_count;
  detail::check_caps(n_sets, n_sets * deg);

  BinomialTable tab(n);
  std::vector<Subset> sets;
  sets.reserve(n_sets);
  {
    auto c = first_combination(k);
    do {
      sets.emplace_back(c, n);
    } while (next_combination(c, n));
  }
  auto dom = std::make_shared<const Domain>(n, std::move(sets));

  std::vector<std::uint64_t> offsets(n_sets + 1);
  for (std::int64_t s = 0; s <= n_sets; ++s) offsets[s] = static_cast<std::uint64_t>(s) * deg;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n_sets) * deg);

  std::vector<std::int32_t> complement(n - k), merged(k);
  for (std::int64_t s = 0; s < n_sets; ++s) {
    auto coords = dom->set(s).coords();
    {
      std::int32_t w = 0, ci = 0;
      for (std::int32_t v = 1; v <= n; ++v) {
        if (ci < k && coords[ci] == v)
          ++ci;
        else
          complement[w++] = v;
      }
    }
    std::uint64_t out = offsets[s];
    auto kept_pos = first_combination(t);
    do {
      auto added_pos = first_combination(k - t);
      if (k - t > n - k) break;
      do {
        std::int32_t a = 0, b = 0, m = 0;
        while (a < t && b < k - t) {
          std::int32_t x = coords[kept_pos[a] - 1], y = complement[added_pos[b] - 1];
          if (x < y) {
            merged[m++] = x;
            ++a;
          } else {
            merged[m++] = y;
            ++b;
          }
        }
        while (a < t) merged[m++] = coords[kept_pos[a++] - 1];
        while (b < k - t) merged[m++] = complement[added_pos[b++] - 1];
        nbr[out++] = static_cast<std::uint32_t>(combination_rank(merged, n, tab));
      } while (next_combination(added_pos, n - k));
    } while (next_combination(kept_pos, t == 0 ? 0 : k));
    std::sort(nbr.begin() + offsets[s], nbr.begin() + out);
  }

  return TestGraph(std::move(dom), std::move(offsets), std::move(nbr), {}, TestGraph::unchecked_t{});
}

// Cyclic sliding windows of length k over [n], one per start (or every k/2
// positions in the sparse variant). S ~ S' iff the windows intersect; this
// includes a self loop at every vertex. Unit weights.
inline TestGraph build_sliding_window(std::int32_t n, std::int32_t k, bool sparse = false) {
  if (n < 1 || k < 1 || k > n) throw InvalidArgument("sliding window: need 1 <= k <= n");
  std::int64_t n_sets = 0;
  std::vector<std::int64_t> starts;
  if (!sparse) {
    n_sets = n;
    starts.resize(n);
    for (std::int32_t i = 0; i < n; ++i) starts[i] = i;
  } else {
    if (k % 2 != 0) throw InvalidArgument("sparse sliding window: k must be even");
    if ((2LL * n) % k != 0) throw InvalidArgument("sparse sliding window: k must divide 2n");
    n_sets = 2LL * n / k;
    starts.resize(n_sets);
    for (std::int64_t j = 0; j < n_sets; ++j) starts[j] = j * (k / 2);
  }

  detail::check_caps(n_sets, 0);
  std::vector<Subset> sets;
  sets.reserve(n_sets);
  for (std::int64_t j = 0; j < n_sets; ++j) {
    std::vector<std::int32_t> coords(k);
    for (std::int32_t a = 0; a < k; ++a)
      coords[a] = static_cast<std::int32_t>((starts[j] + a) % n) + 1;
    sets.emplace_back(std::move(coords), n);
  }
  auto dom = std::make_shared<const Domain>(n, std::move(sets));

  // Windows intersect iff their start indices are close cyclically: within
  // k-1 positions for the dense family, within 1 step for the sparse one.
  std::int64_t reach = sparse ? 1 : (k - 1);
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> nbr;
  std::vector<char> mark(n_sets, 0);
  std::vector<std::int64_t> touched;
  for (std::int64_t j = 0; j < n_sets; ++j) {
    touched.clear();
    for (std::int64_t d = -reach; d <= reach; ++d) {
      std::int64_t o = ((j + d) % n_sets + n_sets) % n_sets;
      if (!mark[o]) {
        mark[o] = 1;
        touched.push_back(o);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::int64_t o : touched) {
      nbr.push_back(static_cast<std::uint32_t>(o));
      mark[o] = 0;
    }
    offsets.push_back(nbr.size());
    detail::check_caps(n_sets, static_cast<std::int64_t>(nbr.size()));
  }

  return TestGraph(std::move(dom), std::move(offsets), std::move(nbr), {}, TestGraph::unchecked_t{});
}

// All n/2-subsets of [n] with the complete graph plus self loops.
inline TestGraph build_clique_slice(std::int32_t n) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("clique slice: n must be even and >= 2");
  std::int64_t n_sets = binomial_capped(n, n / 2, TestGraph::kMaxVertices + 1);
  detail::check_caps(n_sets, 0);
  detail::check_caps(n_sets, n_sets * n_sets);

  std::vector<Subset> sets;
  sets.reserve(n_sets);
  auto c = first_combination(n / 2);
  do {
    sets.emplace_back(c, n);
  } while (next_combination(c, n));
  auto dom = std::make_shared<const Domain>(n, std::move(sets));

  std::vector<std::uint64_t> offsets(n_sets + 1);
  for (std::int64_t s = 0; s <= n_sets; ++s) offsets[s] = static_cast<std::uint64_t>(s) * n_sets;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n_sets) * n_sets);
  for (std::int64_t s = 0; s < n_sets; ++s)
    for (std::int64_t o = 0; o < n_sets; ++o)
      nbr[s * n_sets + o] = static_cast<std::uint32_t>(o);

  return TestGraph(std::move(dom), std::move(offsets), std::move(nbr), {}, TestGraph::unchecked_t{});
}

// Builds a graph from an explicit edge list [s, s', w]. Directed duplicates
// accumulate; the result is symmetrized, so an edge listed once in either
// orientation gets that weight in both directions.
inline TestGraph build_from_edges(DomainPtr dom,
                                  const std::vector<std::array<std::int64_t, 3>>& edges) {
  if (!dom) throw InvalidArgument("build_from_edges: null domain");
  std::int64_t n_sets = dom->size();
  detail::check_caps(n_sets, 0);
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> acc;
  for (const auto& e : edges) {
    if (e[0] < 0 || e[0] >= n_sets || e[1] < 0 || e[1] >= n_sets)
      throw InvalidArgument("build_from_edges: endpoint out of range");
    if (e[2] <= 0) throw InvalidArgument("build_from_edges: weight must be positive");
    acc[{e[0], e[1]}] += e[2];
  }
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> sym;
  for (const auto& [key, w] : acc) {
    auto [u, v] = key;
    if (u == v)
      sym[{u, v}] += w;
    else {
      sym[{u, v}] += w;
      sym[{v, u}] += w;
    }
  }
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> nbr;
  std::vector<std::int32_t> wt;
  auto it = sym.begin();
  for (std::int64_t s = 0; s < n_sets; ++s) {
    while (it != sym.end() && it->first.first == s) {
      if (it->second > std::numeric_limits<std::int32_t>::max())
        throw NumericFailure("build_from_edges: weight overflow");
      nbr.push_back(static_cast<std::uint32_t>(it->first.second));
      wt.push_back(static_cast<std::int32_t>(it->second));
      ++it;
    }
    offsets.push_back(nbr.size());
  }
  detail::check_caps(n_sets, static_cast<std::int64_t>(nbr.size()));
  return TestGraph(std::move(dom), std::move(offsets), std::move(nbr), std::move(wt),
                   TestGraph::unchecked_t{});
}

// One ordered pick of the two-query test: S uniform over vertices, then S'
// with probability proportional to edge weight at S.
inline std::pair<std::int64_t, std::int64_t> sample_edge(const TestGraph& g, std::mt19937_64& eng) {
  if (g.size() == 0) throw InvalidGraph("sample_edge: empty graph");
  std::int64_t s = static_cast<std::int64_t>(bounded(eng, g.size()));
  std::int64_t d = g.degree(s);
  if (d == 0) throw InvalidGraph("sample_edge: zero-degree vertex");
  std::int64_t x = static_cast<std::int64_t>(bounded(eng, d));
  auto row = g.row_neighbors(s);
  for (std::size_t j = 0; j < row.size(); ++j) {
    x -= g.row_weight(s, j);
    if (x < 0) return {s, row[j]};
  }
  throw NumericFailure("sample_edge: inconsistent degree");
}

// The subgraph induced on V_i (sets containing coordinate i), with parent[j]
// giving each local vertex's index in the full domain.
struct LocalView {
  TestGraph graph;
  std::vector<std::int32_t> parent;
};

inline LocalView local_subgraph(const TestGraph& g, std::int32_t i) {
  const Domain& dom = *g.domain();
  auto members = dom.sets_in(i);
  if (members.empty()) throw InvalidGraph("local_subgraph: coordinate covered by no set");

  std::vector<std::int32_t> local_of(dom.size(), -1);
  std::vector<Subset> sub_sets;
  sub_sets.reserve(members.size());
  for (std::size_t j = 0; j < members.size(); ++j) {
    local_of[members[j]] = static_cast<std::int32_t>(j);
    sub_sets.push_back(dom.set(members[j]));
  }
  auto sub_dom = std::make_shared<const Domain>(dom.n(), std::move(sub_sets));

  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> nbr;
  std::vector<std::int32_t> wt;
  for (std::size_t j = 0; j < members.size(); ++j) {
    std::int64_t s = members[j];
    auto row = g.row_neighbors(s);
    for (std::size_t a = 0; a < row.size(); ++a) {
      std::int32_t loc = local_of[row[a]];
      if (loc >= 0) {
        nbr.push_back(static_cast<std::uint32_t>(loc));
        wt.push_back(g.row_weight(s, a));
      }
    }
    offsets.push_back(nbr.size());
  }
  TestGraph sub(std::move(sub_dom), std::move(offsets), std::move(nbr), std::move(wt),
                TestGraph::unchecked_t{});
  return {std::move(sub), std::vector<std::int32_t>(members.begin(), members.end())};
}

}  // namespace dpt
