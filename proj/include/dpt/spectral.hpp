#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpt/error.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/testgraph.hpp"

namespace dpt {

// Nontrivial spectrum of the degree-normalized adjacency operator: A/d for
// regular graphs, D^{-1/2} A D^{-1/2} otherwise. lambda_g is the spectral
// expansion max(|lambda2|, |lambda_min|). Sign conventions are never assumed:
// both ends are reported.
struct SpectralReport {
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  double lambda_g = 0.0;
  double residual = 0.0;
  std::string method;
  bool regular = false;
  bool connected = false;
};

enum class EigMethod { automatic, dense, iterative };

struct EigOptions {
  std::int64_t dense_cutoff = 2000;
  double tol = 1e-9;
  std::int64_t max_iters = 100000;
};

namespace detail {

class NormalizedAdjacency {
 public:
  explicit NormalizedAdjacency(const TestGraph& g) : g_(g), inv_sqrt_(g.size()) {
    for (std::int64_t s = 0; s < g.size(); ++s)
      inv_sqrt_[s] = g.degree(s) > 0 ? 1.0 / std::sqrt(static_cast<double>(g.degree(s))) : 0.0;
  }

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    std::int64_t n_v = g_.size();
    for (std::int64_t s = 0; s < n_v; ++s) {
      double acc = 0.0;
      auto row = g_.row_neighbors(s);
      for (std::size_t j = 0; j < row.size(); ++j)
        acc += g_.row_weight(s, j) * inv_sqrt_[row[j]] * x[row[j]];
      y[s] = acc * inv_sqrt_[s];
    }
  }

  // Unit top eigenvector D^{1/2} 1 (uniform for regular graphs).
  std::vector<double> top_vector() const {
    std::vector<double> v(g_.size());
    double norm = 0.0;
    for (std::int64_t s = 0; s < g_.size(); ++s) {
      v[s] = std::sqrt(static_cast<double>(g_.degree(s)));
      norm += v[s] * v[s];
    }
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto& c : v) c /= norm;
    return v;
  }

 private:
  const TestGraph& g_;
  std::vector<double> inv_sqrt_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Power method on the deflated half-shifted operator shift*(I + sign*A)/2,
// which is positive semidefinite, so the dominant eigenvalue is the largest.
// Returns the extreme eigenvalue of A orthogonal to top, with the residual in
// A units.
inline std::pair<double, double> extreme_eigenvalue(const NormalizedAdjacency& op,
                                                    const std::vector<double>& top, int sign,
                                                    const EigOptions& opt) {
  std::int64_t n_v = static_cast<std::int64_t>(top.size());
  std::vector<double> v(n_v), av(n_v), mv(n_v);
  std::uint64_t state = 0x6a7de83c156f92bdULL + static_cast<std::uint64_t>(sign + 2);
  auto redraw = [&]() {
    for (auto& c : v) c = (static_cast<double>(splitmix64(state) >> 11) / 9007199254740992.0) - 0.5;
    double d = dot(v, top);
    for (std::int64_t i = 0; i < n_v; ++i) v[i] -= d * top[i];
  };
  redraw();
  while (norm(v) < 1e-12) redraw();
  double nv = norm(v);
  for (auto& c : v) c /= nv;

  auto apply_m = [&](const std::vector<double>& x, std::vector<double>& y) {
    op.apply(x, av);
    for (std::int64_t i = 0; i < n_v; ++i) y[i] = 0.5 * (x[i] + sign * av[i]);
    double d = dot(y, top);
    for (std::int64_t i = 0; i < n_v; ++i) y[i] -= d * top[i];
  };

  double theta = 0.0, res = 0.0;
  for (std::int64_t it = 0; it < opt.max_iters; ++it) {
    apply_m(v, mv);
    theta = dot(v, mv);
    res = 0.0;
    for (std::int64_t i = 0; i < n_v; ++i) {
      double r = mv[i] - theta * v[i];
      res += r * r;
    }
    res = std::sqrt(res);
    if (res <= opt.tol / 2) {
      return {sign * (2.0 * theta - 1.0), 2.0 * res};
    }
    double m = norm(mv);
    if (m < 1e-300) return {sign * (2.0 * theta - 1.0), 2.0 * res};  // deflated operator is zero
    for (std::int64_t i = 0; i < n_v; ++i) v[i] = mv[i] / m;
    double d = dot(v, top);
    for (std::int64_t i = 0; i < n_v; ++i) v[i] -= d * top[i];
  }
  throw NumericFailure("iterative eigensolver did not converge");
}

}  // namespace detail

inline SpectralReport lambda_of(const TestGraph& g, EigMethod method = EigMethod::automatic,
                                const EigOptions& opt = {}) {
  std::int64_t n_v = g.size();
  if (n_v == 0) throw InvalidGraph("lambda_of: empty graph");
  SpectralReport rep;
  rep.regular = g.is_regular();
  rep.connected = g.connected();
  if (n_v == 1) {
    rep.method = "dense";
    return rep;
  }
  if (method == EigMethod::automatic)
    method = n_v <= opt.dense_cutoff ? EigMethod::dense : EigMethod::iterative;

  if (method == EigMethod::dense) {
    if (n_v > 20000) throw UnsupportedSize("lambda_of: graph too large for dense solver");
    std::vector<double> inv_sqrt(n_v);
    for (std::int64_t s = 0; s < n_v; ++s)
      inv_sqrt[s] = g.degree(s) > 0 ? 1.0 / std::sqrt(static_cast<double>(g.degree(s))) : 0.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_v, n_v);
    for (std::int64_t s = 0; s < n_v; ++s) {
      auto row = g.row_neighbors(s);
      for (std::size_t j = 0; j < row.size(); ++j)
        m(s, row[j]) = g.row_weight(s, j) * inv_sqrt[s] * inv_sqrt[row[j]];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericFailure("dense eigensolver failed");
    const auto& ev = solver.eigenvalues();
    rep.lambda2 = ev[n_v - 2];
    rep.lambda_min = ev[0];
    rep.method = "dense";
  } else {
    detail::NormalizedAdjacency op(g);
    auto top = op.top_vector();
    auto [l2, r2] = detail::extreme_eigenvalue(op, top, +1, opt);
    auto [lm, rm] = detail::extreme_eigenvalue(op, top, -1, opt);
    rep.lambda2 = l2;
    rep.lambda_min = lm;
    rep.residual = std::max(r2, rm);
    rep.method = "iterative";
  }
  rep.lambda_g = std::max(std::abs(rep.lambda2), std::abs(rep.lambda_min));
  return rep;
}

// True when J(n,k,t) has at least one edge, at least two vertices, and
// satisfies (k-t)(n-1) >= k(n-k), under which the closed form below gives the
// extreme nontrivial normalized eigenvalue.
inline bool johnson_closed_form_applicable(std::int32_t n, std::int32_t k, std::int32_t t) {
  if (n < 1 || k < 1 || k > n || t < 0 || t >= k) return false;
  if (n == k) return false;                  // single vertex
  if (k - t > n - k) return false;           // no edges
  return static_cast<std::int64_t>(k - t) * (n - 1) >= static_cast<std::int64_t>(k) * (n - k);
}

// t/k - (k-t)/(n-k). Matches lambda2 when nonnegative and lambda_min when
// negative; its absolute value is lambda_g either way.
inline Rational johnson_lambda2_closed_form(std::int32_t n, std::int32_t k, std::int32_t t) {
  if (!johnson_closed_form_applicable(n, k, t))
    throw InvalidArgument("johnson closed form: (n,k,t) outside its validity range");
  return Rational(t, k) - Rational(k - t, n - k);
}

// |T|/|V| + lambda_g * sqrt(c |T| / |S|), the expander-mixing upper bound on
// Pr[S' in T | S in S0] when S is drawn from a distribution mu supported on S0
// whose density ratio is at most c. The uniform case c = 1 additionally
// requires |S0| <= |V|/2.
inline double mixing_bound(double lambda_g, std::int64_t vertex_count, std::int64_t s_size,
                           std::int64_t t_size, double c_ratio) {
  if (vertex_count < 1 || s_size < 1 || t_size < 0 || t_size > vertex_count)
    throw InvalidArgument("mixing_bound: bad set sizes");
  if (c_ratio < 1.0) throw InvalidArgument("mixing_bound: density ratio must be >= 1");
  if (c_ratio == 1.0 && 2 * s_size > vertex_count)
    throw InvalidArgument("mixing_bound: uniform form requires |S| <= |V|/2");
  return static_cast<double>(t_size) / static_cast<double>(vertex_count) +
         lambda_g * std::sqrt(c_ratio * static_cast<double>(t_size) / static_cast<double>(s_size));
}

inline double mixing_bound(const TestGraph& g, std::int64_t s_size, std::int64_t t_size,
                           double c_ratio, EigMethod method = EigMethod::automatic) {
  if (!g.is_regular()) throw InvalidGraph("mixing_bound: graph must be regular");
  return mixing_bound(lambda_of(g, method).lambda_g, g.size(), s_size, t_size, c_ratio);
}

// Exact Pr[S' in T | S ~ mu on S0] for one test pick. mu_weights, when given,
// runs parallel to s_members; uniform otherwise.
inline Rational conditional_edge_probability(const TestGraph& g,
                                             std::span<const std::int64_t> s_members,
                                             std::span<const std::int64_t> t_members,
                                             std::span<const std::int64_t> mu_weights = {}) {
  if (s_members.empty()) throw InvalidArgument("conditional_edge_probability: empty S");
  if (!mu_weights.empty() && mu_weights.size() != s_members.size())
    throw InvalidArgument("conditional_edge_probability: mu length mismatch");
  std::vector<char> in_t(g.size(), 0);
  for (auto t : t_members) {
    if (t < 0 || t >= g.size()) throw InvalidArgument("conditional_edge_probability: T out of range");
    in_t[t] = 1;
  }
  std::int64_t total_mu = 0;
  for (std::size_t j = 0; j < s_members.size(); ++j) {
    std::int64_t w = mu_weights.empty() ? 1 : mu_weights[j];
    if (w <= 0) throw InvalidArgument("conditional_edge_probability: mu must be positive");
    total_mu += w;
  }
  Rational acc;
  for (std::size_t j = 0; j < s_members.size(); ++j) {
    std::int64_t u = s_members[j];
    if (u < 0 || u >= g.size()) throw InvalidArgument("conditional_edge_probability: S out of range");
    if (g.degree(u) == 0) throw InvalidGraph("conditional_edge_probability: zero-degree vertex");
    std::int64_t mu_u = mu_weights.empty() ? 1 : mu_weights[j];
    std::int64_t w_t = 0;
    auto row = g.row_neighbors(u);
    for (std::size_t a = 0; a < row.size(); ++a)
      if (in_t[row[a]]) w_t += g.row_weight(u, a);
    if (w_t != 0) acc += Rational::make(detail::int128(mu_u) * w_t,
                                        detail::int128(total_mu) * g.degree(u));
  }
  return acc;
}

}  // namespace dpt
