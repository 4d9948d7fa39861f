#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpt/error.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/spectral.hpp"
#include "dpt/testgraph.hpp"

namespace dpt {

// Quadratic surd a - b*sqrt(r) with b, r >= 0. Sign decisions are exact; the
// double value is for reporting only.
struct Surd {
  Rational a;
  Rational b;
  Rational r;

  Surd(Rational a_, Rational b_, Rational r_) : a(a_), b(b_), r(r_) {
    if (b.sign() < 0 || r.sign() < 0) throw InvalidArgument("surd: b and r must be nonnegative");
  }

  double value() const { return a.to_double() - b.to_double() * std::sqrt(r.to_double()); }

  int sign() const {
    if (b.sign() == 0 || r.sign() == 0) return a.sign();
    if (a.sign() <= 0) return -1;
    Rational lhs = a * a;
    Rational rhs = b * b * r;
    if (lhs > rhs) return 1;
    if (lhs < rhs) return -1;
    return 0;
  }

  Surd scaled(const Rational& f) const {
    if (f.sign() < 0) throw InvalidArgument("surd: negative scale");
    return Surd(f * a, f * b, r);
  }
};

// The three soundness margins and their combination
//   e1 = 1/2 - lambda (sqrt(1/(2c)) + 1)
//   e2 = c   - lambda (sqrt(2 - 2c) + 1)
//   e3 = rho/2 - 2 lambda - (2c + lambda sqrt(2c/(1-2c)))
//   K  = min(c e1, e2 / 2, (1 - 2c) e3)
// With K > 0 certified graphs bound the decoding distance by epsilon / K.
struct SoundnessBreakdown {
  Surd e1, e2, e3;
  Surd k1, k2, k3;  // c*e1, e2/2, (1-2c)*e3
  double k_value = 0.0;
  bool k_positive = false;
  std::optional<Rational> k_exact;  // available when lambda == 0
};

inline SoundnessBreakdown soundness_constant(const Rational& lambda, const Rational& rho,
                                             const Rational& c = Rational(3, 40)) {
  if (lambda.sign() < 0 || lambda > Rational(1))
    throw InvalidArgument("soundness_constant: lambda must lie in [0, 1]");
  if (rho.sign() < 0 || rho > Rational(1))
    throw InvalidArgument("soundness_constant: rho must lie in [0, 1]");
  if (!(c > Rational(0)) || !(c < Rational(1, 2)))
    throw InvalidArgument("soundness_constant: c must lie in (0, 1/2)");

  Surd e1(Rational(1, 2) - lambda, lambda, Rational(1) / (Rational(2) * c));
  Surd e2(c - lambda, lambda, Rational(2) - Rational(2) * c);
  Surd e3(rho / Rational(2) - Rational(2) * lambda - Rational(2) * c, lambda,
          Rational(2) * c / (Rational(1) - Rational(2) * c));

  SoundnessBreakdown out{e1,
                         e2,
                         e3,
                         e1.scaled(c),
                         e2.scaled(Rational(1, 2)),
                         e3.scaled(Rational(1) - Rational(2) * c),
                         0.0,
                         false,
                         std::nullopt};
  out.k_value = std::min({out.k1.value(), out.k2.value(), out.k3.value()});
  out.k_positive = out.k1.sign() > 0 && out.k2.sign() > 0 && out.k3.sign() > 0;
  if (lambda.sign() == 0) out.k_exact = std::min({out.k1.a, out.k2.a, out.k3.a});
  return out;
}

struct ConditionGlobal {
  double lambda_target = 0.0;
  double lambda_global = 0.0;   // lambda(G)
  double worst_local = 0.0;     // max_i lambda(G_i)
  std::int32_t worst_coord = 0; // 1-based; 0 when no coordinate is covered
  bool pass = false;
};

struct ConditionRetention {
  Rational rho_target;
  Rational min_retention;
  std::int64_t worst_set = -1;
  std::int32_t worst_coord = 0;
  bool pass = false;
};

struct ConditionSampling {
  Rational lambda_target;
  Rational rho_target;
  Rational worst_tail;
  std::int64_t worst_set = -1;
  std::vector<std::int32_t> worst_subset;  // coordinates of the worst T
  bool exhaustive = true;
  std::int64_t samples_per_size = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

struct SamplingStrategy {
  enum class Mode { automatic, exhaustive, sampled };
  Mode mode = Mode::automatic;
  std::int64_t samples_per_size = 200;
  std::uint64_t seed = 0;
};

struct Certificate {
  Rational lambda;
  Rational rho;
  ConditionGlobal global;
  ConditionRetention retention;
  ConditionSampling sampling;
  bool certified = false;
};

namespace detail {

inline void require_certifiable(const TestGraph& g) {
  if (g.size() == 0) throw InvalidGraph("certify: empty graph");
  if (!g.is_regular()) throw InvalidGraph("certify: graph must be regular");
  if (g.regular_degree() == 0) throw InvalidGraph("certify: graph has no edges");
}

}  // namespace detail

// Condition 1: lambda(G) < lambda and lambda(G_i) < lambda for every covered
// coordinate. A disconnected (sub)graph reports lambda = 1 and fails any
// target below 1. A target of 1 or more passes vacuously.
inline ConditionGlobal check_condition_global(const TestGraph& g, double lambda_target,
                                              const EigOptions& opt = {}) {
  detail::require_certifiable(g);
  ConditionGlobal out;
  out.lambda_target = lambda_target;
  out.lambda_global = lambda_of(g, EigMethod::automatic, opt).lambda_g;
  const Domain& dom = *g.domain();
  out.worst_local = 0.0;
  for (std::int32_t i = 1; i <= dom.n(); ++i) {
    if (!dom.covers(i)) continue;
    LocalView view = local_subgraph(g, i);
    double li = lambda_of(view.graph, EigMethod::automatic, opt).lambda_g;
    if (out.worst_coord == 0 || li > out.worst_local) {
      out.worst_local = li;
      out.worst_coord = i;
    }
  }
  out.pass = lambda_target >= 1.0 ||
             (out.lambda_global < lambda_target && out.worst_local < lambda_target);
  return out;
}

// Condition 2: Pr[S' in V_i] >= rho for every S and every i in S, exactly.
inline ConditionRetention check_condition_retention(const TestGraph& g, const Rational& rho) {
  detail::require_certifiable(g);
  ConditionRetention out;
  out.rho_target = rho;
  const Domain& dom = *g.domain();
  out.min_retention = Rational(1);
  for (std::int64_t s = 0; s < g.size(); ++s) {
    const Subset& sub = dom.set(s);
    auto row = g.row_neighbors(s);
    for (std::int32_t ci = 0; ci < sub.size(); ++ci) {
      std::int32_t i = sub.coord(ci);
      std::int64_t w_in = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (dom.set(row[j]).contains(i)) w_in += g.row_weight(s, j);
      Rational r(w_in, g.degree(s));
      if (out.worst_set < 0 || r < out.min_retention) {
        out.min_retention = r;
        out.worst_set = s;
        out.worst_coord = i;
      }
    }
  }
  out.pass = out.min_retention >= rho;
  return out;
}

// Condition 3: for every S and every T subset of S with |T| >= ceil(2/rho),
// Pr[|S' and T| <= rho|T|/2] <= lambda. Exhaustive mode enumerates every T
// (requires |S| <= 16); sampled mode draws random T per size and certifies
// nothing, it only searches for violations.
inline ConditionSampling check_condition_sampling(const TestGraph& g, const Rational& rho,
                                                  const Rational& lambda,
                                                  const SamplingStrategy& strategy = {}) {
  detail::require_certifiable(g);
  if (rho.sign() < 0) throw InvalidArgument("condition 3: rho must be >= 0");
  const Domain& dom = *g.domain();
  std::int32_t max_k = 0;
  for (std::int64_t s = 0; s < g.size(); ++s)
    max_k = std::max(max_k, dom.set(s).size());

  bool exhaustive;
  switch (strategy.mode) {
    case SamplingStrategy::Mode::exhaustive:
      if (max_k > 16)
        throw UnsupportedSize("condition 3: exhaustive enumeration needs set size <= 16");
      exhaustive = true;
      break;
    case SamplingStrategy::Mode::sampled:
      exhaustive = false;
      break;
    default:
      exhaustive = max_k <= 16;
  }

  ConditionSampling out;
  out.lambda_target = lambda;
  out.rho_target = rho;
  out.exhaustive = exhaustive;
  out.samples_per_size = exhaustive ? 0 : strategy.samples_per_size;
  out.seed = strategy.seed;
  out.worst_tail = Rational(0);

  // rho = 0 makes the size threshold 2/rho unbounded: no T is eligible.
  if (rho.sign() == 0) {
    out.pass = out.worst_tail <= lambda;
    return out;
  }

  std::int64_t min_t = ceil_times(Rational(2) / rho, 1);
  std::vector<std::uint64_t> imask;
  auto eng = make_engine(strategy.seed, 1);

  for (std::int64_t s = 0; s < g.size(); ++s) {
    const Subset& sub = dom.set(s);
    std::int32_t k = sub.size();
    if (k < min_t) continue;
    if (!exhaustive && k > 64)
      throw UnsupportedSize("condition 3: sampled mode needs set size <= 64");

    auto row = g.row_neighbors(s);
    imask.assign(row.size(), 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const Subset& other = dom.set(row[j]);
      std::int32_t a = 0, b = 0;
      while (a < k && b < other.size()) {
        std::int32_t x = sub.coord(a), y = other.coord(b);
        if (x < y)
          ++a;
        else if (x > y)
          ++b;
        else {
          imask[j] |= (std::uint64_t(1) << a);
          ++a;
          ++b;
        }
      }
    }

    auto tail_for = [&](std::uint64_t t_mask, std::int32_t t_size) {
      std::int64_t w_small = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        auto hit = std::popcount(imask[j] & t_mask);
        // |S' and T| <= rho |T| / 2, compared exactly.
        if (detail::int128(hit) * 2 * rho.den() <= detail::int128(rho.num()) * t_size)
          w_small += g.row_weight(s, j);
      }
      Rational tail(w_small, g.degree(s));
      if (tail > out.worst_tail || out.worst_set < 0) {
        out.worst_tail = tail;
        out.worst_set = s;
        out.worst_subset.clear();
        for (std::int32_t a = 0; a < k; ++a)
          if ((t_mask >> a) & 1) out.worst_subset.push_back(sub.coord(a));
      }
    };

    if (exhaustive) {
      for (std::uint64_t t_mask = 1; t_mask < (std::uint64_t(1) << k); ++t_mask) {
        std::int32_t t_size = std::popcount(t_mask);
        if (t_size >= min_t) tail_for(t_mask, t_size);
      }
    } else {
      std::vector<std::int32_t> positions(k);
      for (std::int32_t a = 0; a < k; ++a) positions[a] = a;
      for (std::int32_t t_size = static_cast<std::int32_t>(min_t); t_size <= k; ++t_size) {
        for (std::int64_t rep = 0; rep < strategy.samples_per_size; ++rep) {
          for (std::int32_t a = 0; a < t_size; ++a) {
            std::int32_t b = a + static_cast<std::int32_t>(bounded(eng, k - a));
            std::swap(positions[a], positions[b]);
          }
          std::uint64_t t_mask = 0;
          for (std::int32_t a = 0; a < t_size; ++a) t_mask |= (std::uint64_t(1) << positions[a]);
          tail_for(t_mask, t_size);
        }
      }
    }
  }

  out.pass = out.worst_tail <= lambda;
  return out;
}

// Runs all three checks. The certificate is sound when condition 3 ran
// exhaustively; in sampled mode a pass only means no violation was found.
inline Certificate certify_coordinate_expansion(const TestGraph& g, const Rational& lambda,
                                                const Rational& rho,
                                                const SamplingStrategy& strategy = {},
                                                const EigOptions& opt = {}) {
  if (lambda.sign() < 0 || lambda > Rational(1))
    throw InvalidArgument("certify: lambda must lie in [0, 1]");
  if (rho.sign() < 0 || rho > Rational(1))
    throw InvalidArgument("certify: rho must lie in [0, 1]");
  Certificate cert;
  cert.lambda = lambda;
  cert.rho = rho;
  cert.global = check_condition_global(g, lambda.to_double(), opt);
  cert.retention = check_condition_retention(g, rho);
  cert.sampling = check_condition_sampling(g, rho, lambda, strategy);
  cert.certified = cert.global.pass && cert.retention.pass && cert.sampling.pass;
  return cert;
}

}  // namespace dpt
