// Reproduces the large-distance family that the two-query test accepts with
// noticeable probability: J(20,10,1) with one flipped bit per set. The planted
// table is far from every codeword, yet at most a quarter of the edges reject.

#include <cstdio>

#include "dpt/dpt.hpp"

int main() {
  using namespace dpt;

  std::printf("building J(20,10,1)...\n");
  TestGraph g = build_johnson(20, 10, 1);
  std::printf("  %lld sets, degree %d\n", static_cast<long long>(g.size()),
              static_cast<int>(g.regular_degree()));

  Assignment a = Assignment::zeros(20);
  DPTable f = per_set_single_flip(a, g.domain(), 7);

  Rational planted = dp_distance(f, dp_encode(a, g.domain()));
  std::printf("distance to the planted codeword: %s = %.6f\n", planted.str().c_str(),
              planted.to_double());

  std::printf("computing exact rejection probability...\n");
  TestReport rep = rejection_probability_exact(f, g);
  std::printf("  rejection = %s = %.6f\n", rep.rejection.str().c_str(),
              rep.rejection.to_double());

  std::printf("majority decoding...\n");
  DecodeResult dec = majority_decode(f);
  Rational beta = dp_distance(f, dec.table);
  std::printf("  distance to the decoded codeword: %s = %.6f\n", beta.str().c_str(),
              beta.to_double());

  std::printf("\nrejection <= 1/4 while the table is %.0f%% corrupted: the local\n",
              100.0 * beta.to_double());
  std::printf("test cannot certify closeness on this graph.\n");
  return 0;
}
