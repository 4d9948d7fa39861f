#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dpt/dpt.hpp"

using namespace dpt;

TEST_CASE("exact surd signs") {
  CHECK(Surd(Rational(1), Rational(0), Rational(2)).sign() == 1);
  CHECK(Surd(Rational(3), Rational(2), Rational(2)).sign() == 1);    // 9 > 8
  CHECK(Surd(Rational(2), Rational(3), Rational(2)).sign() == -1);   // 4 < 18
  CHECK(Surd(Rational(2), Rational(1), Rational(4)).sign() == 0);
  CHECK(Surd(Rational(-1), Rational(1), Rational(2)).sign() == -1);
  CHECK(Surd(Rational(0), Rational(1), Rational(0)).sign() == 0);
  CHECK_THROWS_AS(Surd(Rational(1), Rational(-1), Rational(2)), InvalidArgument);
  CHECK(Surd(Rational(3), Rational(2), Rational(2)).value() == Catch::Approx(3.0 - 2.0 * std::sqrt(2.0)));
}

TEST_CASE("global condition on the half slice") {
  TestGraph g = build_clique_slice(8);
  ConditionGlobal cond = check_condition_global(g, 0.1);
  CHECK(cond.lambda_global < 1e-9);
  CHECK(cond.worst_local < 1e-9);
  CHECK(cond.pass);
}

TEST_CASE("global condition fails on slowly mixing windows") {
  TestGraph g = build_sliding_window(6, 3);
  ConditionGlobal cond = check_condition_global(g, 0.1);
  CHECK(cond.lambda_global == Catch::Approx(0.2).margin(1e-9));
  CHECK(!cond.pass);
  CHECK(check_condition_global(g, 1.0).pass);
}

TEST_CASE("retention is exact") {
  CHECK(check_condition_retention(build_sliding_window(6, 3), Rational(1, 2)).min_retention ==
        Rational(3, 5));
  CHECK(check_condition_retention(build_clique_slice(8), Rational(1, 2)).min_retention ==
        Rational(1, 2));
  CHECK(check_condition_retention(build_johnson(6, 3, 1), Rational(1, 4)).min_retention ==
        Rational(1, 3));
  CHECK(check_condition_retention(build_johnson(8, 4, 2), Rational(1, 2)).min_retention ==
        Rational(1, 2));
  CHECK(check_condition_retention(build_sliding_window(6, 3), Rational(3, 5)).pass);
  CHECK(!check_condition_retention(build_sliding_window(6, 3), Rational(2, 3)).pass);
}

TEST_CASE("sampling condition tail on the half slice") {
  TestGraph g = build_clique_slice(8);
  ConditionSampling cond = check_condition_sampling(g, Rational(1, 2), Rational(3, 10));
  CHECK(cond.exhaustive);
  CHECK(cond.worst_tail == Rational(17, 70));
  CHECK(cond.worst_subset.size() == 4);
  CHECK(cond.pass);
  CHECK(!check_condition_sampling(g, Rational(1, 2), Rational(1, 5)).pass);
  CHECK(check_condition_sampling(g, Rational(1, 2), Rational(1)).pass);
}

TEST_CASE("sampling condition is vacuous when no subset is large enough") {
  TestGraph g = build_sliding_window(8, 2);
  ConditionSampling cond = check_condition_sampling(g, Rational(1, 2), Rational(0));
  CHECK(cond.worst_tail == Rational(0));
  CHECK(cond.worst_set == -1);
  CHECK(cond.pass);
}

TEST_CASE("sampled search never beats the exhaustive maximum") {
  TestGraph g = build_sliding_window(12, 4);
  ConditionSampling exact = check_condition_sampling(g, Rational(1), Rational(1));
  SamplingStrategy strat;
  strat.mode = SamplingStrategy::Mode::sampled;
  strat.samples_per_size = 50;
  strat.seed = 11;
  ConditionSampling sampled = check_condition_sampling(g, Rational(1), Rational(1), strat);
  CHECK(exact.exhaustive);
  CHECK(!sampled.exhaustive);
  CHECK(sampled.samples_per_size == 50);
  CHECK(sampled.worst_tail <= exact.worst_tail);

  ConditionSampling again = check_condition_sampling(g, Rational(1), Rational(1), strat);
  CHECK(again.worst_tail == sampled.worst_tail);
}

TEST_CASE("sampling mode size limits") {
  SamplingStrategy force_exhaustive;
  force_exhaustive.mode = SamplingStrategy::Mode::exhaustive;
  TestGraph wide = build_sliding_window(40, 20);
  CHECK_THROWS_AS(
      check_condition_sampling(wide, Rational(1, 2), Rational(1), force_exhaustive),
      UnsupportedSize);

  SamplingStrategy force_sampled;
  force_sampled.mode = SamplingStrategy::Mode::sampled;
  TestGraph huge = build_sliding_window(140, 70);
  CHECK_THROWS_AS(check_condition_sampling(huge, Rational(1, 2), Rational(1), force_sampled),
                  UnsupportedSize);
}

TEST_CASE("certificate for the half slice") {
  TestGraph g = build_clique_slice(8);
  Certificate good = certify_coordinate_expansion(g, Rational(3, 10), Rational(1, 2));
  CHECK(good.certified);
  CHECK(good.global.pass);
  CHECK(good.retention.pass);
  CHECK(good.sampling.pass);

  Certificate tight = certify_coordinate_expansion(g, Rational(1, 5), Rational(1, 2));
  CHECK(tight.global.pass);
  CHECK(tight.retention.pass);
  CHECK(!tight.sampling.pass);
  CHECK(!tight.certified);
}

TEST_CASE("trivial parameters certify anything") {
  CHECK(certify_coordinate_expansion(build_sliding_window(6, 3), Rational(1), Rational(0)).certified);
  CHECK(certify_coordinate_expansion(build_johnson(5, 2, 1), Rational(1), Rational(0)).certified);
}

TEST_CASE("certification is monotone in the parameters") {
  TestGraph g = build_clique_slice(8);
  REQUIRE(certify_coordinate_expansion(g, Rational(3, 10), Rational(1, 2)).certified);
  CHECK(certify_coordinate_expansion(g, Rational(2, 5), Rational(1, 2)).certified);
  CHECK(certify_coordinate_expansion(g, Rational(3, 10), Rational(1, 3)).certified);
  CHECK(certify_coordinate_expansion(g, Rational(1), Rational(1, 2)).certified);
}

TEST_CASE("certify validates its parameters") {
  TestGraph g = build_clique_slice(4);
  CHECK_THROWS_AS(certify_coordinate_expansion(g, Rational(-1, 10), Rational(1, 2)),
                  InvalidArgument);
  CHECK_THROWS_AS(certify_coordinate_expansion(g, Rational(3, 2), Rational(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(certify_coordinate_expansion(g, Rational(1, 2), Rational(-1, 2)),
                  InvalidArgument);
  CHECK_THROWS_AS(certify_coordinate_expansion(g, Rational(1, 2), Rational(2)), InvalidArgument);
}

TEST_CASE("soundness margins at zero lambda") {
  SoundnessBreakdown sb = soundness_constant(Rational(0), Rational(1, 2), Rational(3, 40));
  CHECK(sb.e1.a == Rational(1, 2));
  CHECK(sb.e2.a == Rational(3, 40));
  CHECK(sb.e3.a == Rational(1, 10));
  CHECK(sb.e1.b == Rational(0));
  CHECK(sb.k1.a == Rational(3, 80));
  CHECK(sb.k2.a == Rational(3, 80));
  CHECK(sb.k3.a == Rational(17, 200));
  REQUIRE(sb.k_exact.has_value());
  CHECK(*sb.k_exact == Rational(3, 80));
  CHECK(sb.k_value == Catch::Approx(0.0375));
  CHECK(sb.k_positive);
}

TEST_CASE("soundness margins at the spectral threshold") {
  SoundnessBreakdown sb = soundness_constant(Rational(1, 33), Rational(1, 2), Rational(3, 40));
  CHECK(sb.e1.sign() == 1);
  CHECK(sb.e2.sign() == 1);
  CHECK(sb.e3.sign() == 1);
  CHECK(sb.k_positive);
  CHECK(!sb.k_exact.has_value());
  CHECK(sb.e1.value() == Catch::Approx(0.5 - 1.0 / 33.0 * (std::sqrt(20.0 / 3.0) + 1.0)));
  CHECK(sb.k_value > 0.0);

  SoundnessBreakdown bad = soundness_constant(Rational(1, 2), Rational(1, 2), Rational(3, 40));
  CHECK(bad.e1.sign() < 0);
  CHECK(!bad.k_positive);
}

TEST_CASE("soundness constant validates its parameters") {
  CHECK_THROWS_AS(soundness_constant(Rational(-1, 10), Rational(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(soundness_constant(Rational(2), Rational(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(soundness_constant(Rational(0), Rational(3, 2)), InvalidArgument);
  CHECK_THROWS_AS(soundness_constant(Rational(0), Rational(1, 2), Rational(0)), InvalidArgument);
  CHECK_THROWS_AS(soundness_constant(Rational(0), Rational(1, 2), Rational(1, 2)),
                  InvalidArgument);
  CHECK_NOTHROW(soundness_constant(Rational(0), Rational(0), Rational(3, 40)));
}
