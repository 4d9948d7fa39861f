#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dpt/combinatorics.hpp"
#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/testgraph.hpp"

namespace dpt {

inline DomainPtr singleton_domain(std::int32_t n) {
  std::vector<Subset> sets;
  sets.reserve(n);
  for (std::int32_t i = 1; i <= n; ++i) sets.emplace_back(std::vector<std::int32_t>{i}, n);
  return std::make_shared<const Domain>(n, std::move(sets));
}

// Uniform-ish simple d-regular graph on n vertices via the pairing model with
// rejection; deterministic given the seed. Vertices carry the singleton
// domain {{1}},...,{{n}}.
inline TestGraph random_regular_graph(std::int32_t n, std::int32_t d, std::uint64_t seed,
                                      std::int32_t max_retries = 10000) {
  if (n < 1 || d < 1 || d >= n) throw InvalidArgument("random_regular_graph: need 1 <= d < n");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw InvalidArgument("random_regular_graph: n*d must be even");

  auto eng = make_engine(seed, 0);
  std::vector<std::int32_t> points(static_cast<std::size_t>(n) * d);
  std::vector<std::vector<std::int32_t>> adj(n);
  for (std::int32_t attempt = 0; attempt < max_retries; ++attempt) {
    for (std::size_t p = 0; p < points.size(); ++p)
      points[p] = static_cast<std::int32_t>(p / d);
    fisher_yates(points, eng);
    bool ok = true;
    for (auto& row : adj) row.clear();
    for (std::size_t p = 0; p + 1 < points.size() && ok; p += 2) {
      std::int32_t u = points[p], v = points[p + 1];
      if (u == v) {
        ok = false;
        break;
      }
      for (std::int32_t w : adj[u])
        if (w == v) {
          ok = false;
          break;
        }
      if (!ok) break;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    if (!ok) continue;

    std::vector<std::uint64_t> offsets{0};
    std::vector<std::uint32_t> nbr;
    for (std::int32_t u = 0; u < n; ++u) {
      std::sort(adj[u].begin(), adj[u].end());
      for (std::int32_t v : adj[u]) nbr.push_back(static_cast<std::uint32_t>(v));
      offsets.push_back(nbr.size());
    }
    return TestGraph(singleton_domain(n), std::move(offsets), std::move(nbr), {},
                     TestGraph::unchecked_t{});
  }
  throw NumericFailure("random_regular_graph: retry cap exhausted without a simple graph");
}

struct ExpansionEstimate {
  Rational h;                        // min over candidate S of |boundary(S)| / (d |S|)
  bool exact = false;                // true when every S with |S| <= |V|/d was enumerated
  std::vector<std::int64_t> witness; // an S attaining h
  std::int64_t candidates = 0;
};

enum class ExpansionMode { automatic, brute_force, sampled };

// Vertex expansion h(G) = min_{0 < |S| <= |V|/d} |boundary(S)| / (d |S|),
// where boundary(S) is the set of vertices outside S with a neighbor in S.
// Brute force enumerates every candidate S (budget-capped); sampled mode
// only returns the best witness found, an upper bound on h.
inline ExpansionEstimate vertex_expansion(const TestGraph& g,
                                          ExpansionMode mode = ExpansionMode::automatic,
                                          std::int64_t samples = 20000, std::uint64_t seed = 0) {
  if (!g.is_regular()) throw InvalidGraph("vertex_expansion: graph must be regular");
  std::int64_t n_v = g.size();
  std::int64_t d = g.regular_degree();
  if (d == 0) throw InvalidGraph("vertex_expansion: graph has no edges");
  std::int64_t max_s = n_v / d;
  if (max_s < 1) max_s = 1;

  constexpr std::int64_t kBudget = 2000000;
  std::int64_t budget = 0;
  for (std::int64_t s = 1; s <= max_s && budget <= kBudget; ++s)
    budget += binomial_capped(static_cast<int>(n_v), static_cast<int>(s), kBudget + 1);
  bool brute = mode == ExpansionMode::brute_force ||
               (mode == ExpansionMode::automatic && budget <= kBudget);
  if (mode == ExpansionMode::brute_force && budget > kBudget)
    throw UnsupportedSize("vertex_expansion: brute-force budget exceeded");

  ExpansionEstimate out;
  out.exact = brute;
  out.h = Rational(1);

  std::vector<char> in_s(n_v, 0), counted(n_v, 0);
  std::vector<std::int64_t> touched;
  auto boundary_size = [&](std::span<const std::int64_t> members) {
    std::int64_t count = 0;
    touched.clear();
    for (auto v : members) in_s[v] = 1;
    for (auto v : members) {
      for (std::uint32_t u : g.row_neighbors(v)) {
        if (!in_s[u] && !counted[u]) {
          counted[u] = 1;
          touched.push_back(u);
          ++count;
        }
      }
    }
    for (auto v : members) in_s[v] = 0;
    for (auto u : touched) counted[u] = 0;
    return count;
  };

  auto consider = [&](std::span<const std::int64_t> members) {
    ++out.candidates;
    Rational ratio(boundary_size(members),
                   d * static_cast<std::int64_t>(members.size()));
    if (out.witness.empty() || ratio < out.h) {
      out.h = ratio;
      out.witness.assign(members.begin(), members.end());
    }
  };

  if (brute) {
    std::vector<std::int64_t> members;
    for (std::int64_t s = 1; s <= max_s; ++s) {
      auto c = first_combination(static_cast<int>(s));
      do {
        members.clear();
        for (auto v : c) members.push_back(v - 1);
        consider(members);
      } while (next_combination(c, static_cast<int>(n_v)));
    }
  } else {
    auto eng = make_engine(seed, 0);
    for (std::int64_t rep = 0; rep < samples; ++rep) {
      std::int64_t s = 1 + static_cast<std::int64_t>(bounded(eng, max_s));
      auto members = sample_without_replacement(n_v, s, eng);
      consider(members);
    }
  }
  return out;
}

// The boundary family S_G = { boundary({v}) : v in V }, kept as a multiset in
// vertex order over the ground set [|V|].
inline DomainPtr boundary_domain(const TestGraph& g) {
  std::int64_t n_v = g.size();
  if (n_v == 0) throw InvalidGraph("boundary_domain: empty graph");
  std::vector<Subset> sets;
  sets.reserve(n_v);
  for (std::int64_t v = 0; v < n_v; ++v) {
    std::vector<std::int32_t> coords;
    for (std::uint32_t u : g.row_neighbors(v))
      if (static_cast<std::int64_t>(u) != v) coords.push_back(static_cast<std::int32_t>(u) + 1);
    sets.emplace_back(std::move(coords), static_cast<std::int32_t>(n_v));
  }
  return std::make_shared<const Domain>(static_cast<std::int32_t>(n_v), std::move(sets));
}

struct AmplificationReport {
  Rational delta;             // Hamming distance of the two assignments
  Rational encoded_distance;  // distance of their encodings over the domain
  Rational ratio;             // encoded / (k delta)
  bool in_regime = false;     // delta < 1/k
  std::int32_t k = 0;
};

// Distance amplification of one assignment pair under a uniform-cardinality
// domain.
inline AmplificationReport amplification_ratio(const DomainPtr& dom, const Assignment& x,
                                               const Assignment& y) {
  if (!dom || dom->size() == 0) throw InvalidArgument("amplification_ratio: empty domain");
  if (x.n() != dom->n() || y.n() != dom->n())
    throw InvalidArgument("amplification_ratio: assignment length mismatch");
  std::int32_t k = dom->set(0).size();
  for (std::int64_t s = 1; s < dom->size(); ++s)
    if (dom->set(s).size() != k)
      throw InvalidArgument("amplification_ratio: domain must have uniform set size");
  if (k == 0) throw InvalidArgument("amplification_ratio: sets are empty");

  std::int64_t diff = 0;
  std::vector<char> in_r(dom->n() + 1, 0);
  for (std::int32_t i = 1; i <= dom->n(); ++i)
    if (x.bit(i) != y.bit(i)) {
      in_r[i] = 1;
      ++diff;
    }
  if (diff == 0) throw InvalidArgument("amplification_ratio: assignments are equal");

  std::int64_t hit = 0;
  for (std::int64_t s = 0; s < dom->size(); ++s) {
    for (std::int32_t i : dom->set(s).coords()) {
      if (in_r[i]) {
        ++hit;
        break;
      }
    }
  }

  AmplificationReport out;
  out.k = k;
  out.delta = Rational(diff, dom->n());
  out.encoded_distance = Rational(hit, dom->size());
  out.ratio = out.encoded_distance / (Rational(k) * out.delta);
  out.in_regime = out.delta < Rational(1, k);
  return out;
}

}  // namespace dpt
