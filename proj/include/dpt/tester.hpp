#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/testgraph.hpp"

namespace dpt {

// Accepts iff F(S) and F(S') agree on every shared coordinate. An empty
// intersection accepts vacuously; a self loop always accepts.
inline bool check_edge(const DPTable& f, std::int64_t s, std::int64_t t) {
  const Domain& dom = *f.domain();
  if (s < 0 || s >= dom.size() || t < 0 || t >= dom.size())
    throw InvalidArgument("check_edge: set index out of range");
  if (s == t) return true;
  const Subset& a = dom.set(s);
  const Subset& b = dom.set(t);
  const LocalAssignment& fa = f.value(s);
  const LocalAssignment& fb = f.value(t);
  std::int32_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    std::int32_t x = a.coord(i), y = b.coord(j);
    if (x < y)
      ++i;
    else if (x > y)
      ++j;
    else {
      if (fa.bit(i) != fb.bit(j)) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

struct TestReport {
  std::string mode;           // "exact" or "monte-carlo"
  Rational rejection;         // exact mode only
  double rejection_estimate = 0.0;
  std::int64_t trials = 0;    // monte-carlo only
  std::uint64_t seed = 0;     // monte-carlo only
  double std_error = 0.0;     // monte-carlo only
};

namespace detail {

inline void require_testable(const DPTable& f, const TestGraph& g) {
  if (!(f.domain() == g.domain() || *f.domain() == *g.domain()))
    throw InvalidArgument("tester: table and graph domains differ");
  if (g.size() == 0) throw InvalidGraph("tester: empty graph");
  for (std::int64_t s = 0; s < g.size(); ++s)
    if (g.degree(s) == 0) throw InvalidGraph("tester: zero-degree vertex");
}

}  // namespace detail

// Exact rejection probability over all ordered picks (S uniform, S' weight
// proportional). The enumeration size is the sum of degrees; above the cap
// the caller should fall back to run_test_monte_carlo.
inline TestReport rejection_probability_exact(const DPTable& f, const TestGraph& g,
                                              std::int64_t cap = 100000000) {
  detail::require_testable(f, g);
  if (g.total_weight() > cap)
    throw UnsupportedSize("rejection_probability_exact: pick enumeration exceeds cap");

  TestReport rep;
  rep.mode = "exact";
  std::int64_t n_v = g.size();
  if (g.is_regular()) {
    std::int64_t rejected = 0;
    for (std::int64_t s = 0; s < n_v; ++s) {
      auto row = g.row_neighbors(s);
      for (std::size_t j = 0; j < row.size(); ++j)
        if (!check_edge(f, s, row[j])) rejected += g.row_weight(s, j);
    }
    rep.rejection = Rational::make(rejected, detail::int128(n_v) * g.regular_degree());
  } else {
    Rational acc;
    for (std::int64_t s = 0; s < n_v; ++s) {
      std::int64_t rej_w = 0;
      auto row = g.row_neighbors(s);
      for (std::size_t j = 0; j < row.size(); ++j)
        if (!check_edge(f, s, row[j])) rej_w += g.row_weight(s, j);
      if (rej_w != 0)
        acc += Rational::make(rej_w, detail::int128(n_v) * g.degree(s));
    }
    rep.rejection = acc;
  }
  rep.rejection_estimate = rep.rejection.to_double();
  return rep;
}

// Monte Carlo estimate over independent picks; deterministic given the seed.
inline TestReport run_test_monte_carlo(const DPTable& f, const TestGraph& g, std::int64_t trials,
                                       std::uint64_t seed) {
  detail::require_testable(f, g);
  if (trials < 1) throw InvalidArgument("run_test_monte_carlo: need at least one trial");
  auto eng = make_engine(seed, 0);
  std::int64_t rejected = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    auto [s, sp] = sample_edge(g, eng);
    if (!check_edge(f, s, sp)) ++rejected;
  }
  TestReport rep;
  rep.mode = "monte-carlo";
  rep.trials = trials;
  rep.seed = seed;
  double p = static_cast<double>(rejected) / static_cast<double>(trials);
  rep.rejection_estimate = p;
  rep.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return rep;
}

}  // namespace dpt
