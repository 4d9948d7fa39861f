// Sweeps the corruption rate on a sliding-window instance and compares the
// decoded distance beta against the 4*epsilon guarantee, where epsilon is the
// exact rejection probability of the two-query test.

#include <cstdio>

#include "dpt/dpt.hpp"

int main() {
  using namespace dpt;

  const std::int32_t n = 24, k = 6;
  TestGraph g = build_sliding_window(n, k);
  std::printf("sliding window n=%d k=%d: %lld sets, degree %d\n", n, k,
              static_cast<long long>(g.size()), static_cast<int>(g.regular_degree()));
  std::printf("  %8s  %12s  %12s  %12s  %s\n", "delta", "epsilon", "beta", "4*epsilon", "ok");

  auto eng = make_engine(2024, 0);
  Assignment a = Assignment::zeros(n);
  for (std::int32_t i = 1; i <= n; ++i) a.set_bit(i, static_cast<int>(bounded(eng, 2)));

  for (int step = 0; step <= 10; ++step) {
    Rational delta(step, 20);
    DPTable f = corrupt_random_sets(a, g.domain(), delta, 100 + step);
    TestReport rep = rejection_probability_exact(f, g);
    DecodeResult dec = majority_decode(f);
    Rational beta = dp_distance(f, dec.table);
    Rational bound = Rational(4) * rep.rejection;
    std::printf("  %8s  %12.6f  %12.6f  %12.6f  %s\n", delta.str().c_str(),
                rep.rejection.to_double(), beta.to_double(), bound.to_double(),
                beta <= bound ? "yes" : "NO");
  }
  return 0;
}
