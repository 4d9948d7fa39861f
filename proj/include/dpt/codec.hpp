#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpt/core.hpp"
#include "dpt/error.hpp"
#include "dpt/rational.hpp"

namespace dpt {

struct DecodeResult {
  Assignment assignment;  // a^F: coordinate-wise majority, ties and uncovered
                          // coordinates resolved to 0
  DPTable table;          // d(F) = DP(a^F)
};

// Majority decoding of a table.
inline DecodeResult majority_decode(const DPTable& f) {
  const Domain& dom = *f.domain();
  std::int32_t n = dom.n();
  std::vector<std::int64_t> ones(n + 1, 0);
  for (std::int64_t s = 0; s < dom.size(); ++s) {
    const Subset& sub = dom.set(s);
    for (std::int32_t j = 0; j < sub.size(); ++j)
      if (f.value(s).bit(j)) ++ones[sub.coord(j)];
  }
  std::vector<std::uint8_t> bits(n, 0);
  for (std::int32_t i = 1; i <= n; ++i) {
    std::int64_t cover = static_cast<std::int64_t>(dom.sets_in(i).size());
    bits[i - 1] = (2 * ones[i] > cover) ? 1 : 0;
  }
  Assignment a(std::move(bits));
  DPTable d = dp_encode(a, f.domain());
  return {std::move(a), std::move(d)};
}

enum class CaseLabel { none, case_1a, case_1b, case_2 };

inline const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::case_1a: return "1a";
    case CaseLabel::case_1b: return "1b";
    case CaseLabel::case_2: return "2";
    default: return "none";
  }
}

// Conflict structure of F against its majority decoding.
struct ConflictProfile {
  std::vector<std::int64_t> conflicted_sets;   // B, ascending set indices
  Rational beta;                               // |B| / |V|
  std::vector<std::int64_t> conflict_counts;   // |B(S)| for S in B, ascending
  std::vector<Rational> beta_by_coord;         // beta_i, index i-1; 0 when uncovered
  std::vector<bool> covered;                   // index i-1
  CaseLabel case_label = CaseLabel::none;
  Rational c;
  Rational rho;

  // p-th quantile of the sorted conflict counts: counts[max(1, ceil(p|B|)) - 1].
  std::int64_t m_of(const Rational& p) const {
    if (conflict_counts.empty()) throw InvalidArgument("m_of: no conflicted sets");
    if (p.sign() < 0 || p > Rational(1)) throw InvalidArgument("m_of: p outside [0,1]");
    std::int64_t idx =
        std::max<std::int64_t>(1, ceil_times(p, static_cast<std::int64_t>(conflict_counts.size())));
    return conflict_counts[idx - 1];
  }
};

// Computes B, beta, the conflict-size quantiles, the per-coordinate conflict
// densities beta_i, and the case split driven by c and rho: case 1a when
// m_{1-c} > (2/rho) m_{1/2}, else case 1b when m_{1/2} > (2/rho) m_c, else
// case 2. An uncorrupted table gets the label "none".
inline ConflictProfile conflict_profile(const DPTable& f, const Rational& c,
                                        const Rational& rho = Rational(1, 2)) {
  if (!(c > Rational(0)) || !(c < Rational(1, 2)))
    throw InvalidArgument("conflict_profile: c must lie in (0, 1/2)");
  if (!(rho > Rational(0)) || rho > Rational(1))
    throw InvalidArgument("conflict_profile: rho must lie in (0, 1]");
  const Domain& dom = *f.domain();
  if (dom.size() == 0) throw InvalidArgument("conflict_profile: empty domain");
  DecodeResult dec = majority_decode(f);

  ConflictProfile prof;
  prof.c = c;
  prof.rho = rho;
  std::int32_t n = dom.n();
  std::vector<std::int64_t> coord_conflicts(n + 1, 0);
  for (std::int64_t s = 0; s < dom.size(); ++s) {
    const Subset& sub = dom.set(s);
    std::int64_t bad = 0;
    for (std::int32_t j = 0; j < sub.size(); ++j) {
      if (f.value(s).bit(j) != dec.assignment.bit(sub.coord(j))) {
        ++bad;
        ++coord_conflicts[sub.coord(j)];
      }
    }
    if (bad > 0) {
      prof.conflicted_sets.push_back(s);
      prof.conflict_counts.push_back(bad);
    }
  }
  prof.beta = Rational(static_cast<std::int64_t>(prof.conflicted_sets.size()), dom.size());
  std::sort(prof.conflict_counts.begin(), prof.conflict_counts.end());

  prof.beta_by_coord.resize(n);
  prof.covered.resize(n);
  for (std::int32_t i = 1; i <= n; ++i) {
    std::int64_t cover = static_cast<std::int64_t>(dom.sets_in(i).size());
    prof.covered[i - 1] = cover > 0;
    prof.beta_by_coord[i - 1] = cover > 0 ? Rational(coord_conflicts[i], cover) : Rational(0);
  }

  if (!prof.conflict_counts.empty()) {
    std::int64_t m_1mc = prof.m_of(Rational(1) - c);
    std::int64_t m_half = prof.m_of(Rational(1, 2));
    std::int64_t m_c = prof.m_of(c);
    // m > (2/rho) m' with rho = p/q exactly: m p > 2 q m'.
    auto exceeds = [&](std::int64_t m, std::int64_t m_prime) {
      return detail::int128(m) * rho.num() > detail::int128(2) * rho.den() * m_prime;
    };
    if (exceeds(m_1mc, m_half))
      prof.case_label = CaseLabel::case_1a;
    else if (exceeds(m_half, m_c))
      prof.case_label = CaseLabel::case_1b;
    else
      prof.case_label = CaseLabel::case_2;
  }
  return prof;
}

}  // namespace dpt
