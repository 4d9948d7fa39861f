#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "dpt/dpt.hpp"

using namespace dpt;

namespace {

TestGraph cycle_graph(std::int32_t n) {
  std::vector<std::array<std::int64_t, 3>> edges;
  for (std::int32_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1});
  return build_from_edges(singleton_domain(n), edges);
}

std::vector<std::int32_t> coords_of(const Subset& s) {
  auto span = s.coords();
  return {span.begin(), span.end()};
}

}  // namespace

TEST_CASE("four vertices of degree three form the complete graph") {
  TestGraph g = random_regular_graph(4, 3, 123);
  REQUIRE(g.size() == 4);
  for (std::int64_t v = 0; v < 4; ++v) {
    auto row = g.row_neighbors(v);
    REQUIRE(row.size() == 3);
    std::size_t j = 0;
    for (std::int64_t u = 0; u < 4; ++u)
      if (u != v) CHECK(row[j++] == static_cast<std::uint32_t>(u));
  }
}

TEST_CASE("pairing model delivers simple regular graphs") {
  for (std::uint64_t seed : {1, 2, 3}) {
    TestGraph g = random_regular_graph(6, 2, seed);
    CHECK(g.is_regular());
    CHECK(g.regular_degree() == 2);
    for (std::int64_t v = 0; v < g.size(); ++v) {
      auto row = g.row_neighbors(v);
      CHECK(row.size() == 2);
      for (std::uint32_t u : row) CHECK(static_cast<std::int64_t>(u) != v);
      CHECK(row[0] != row[1]);
    }
  }
  TestGraph h = random_regular_graph(10, 3, 7);
  for (std::int64_t v = 0; v < h.size(); ++v) CHECK(h.degree(v) == 3);
}

TEST_CASE("pairing model validates its parameters") {
  CHECK_THROWS_AS(random_regular_graph(5, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(random_regular_graph(4, 4, 1), InvalidArgument);
  CHECK_THROWS_AS(random_regular_graph(4, 0, 1), InvalidArgument);
}

TEST_CASE("vertex expansion of the six cycle") {
  ExpansionEstimate est = vertex_expansion(cycle_graph(6));
  CHECK(est.exact);
  CHECK(est.h == Rational(1, 3));
  CHECK(est.witness.size() == 3);
}

TEST_CASE("vertex expansion of the complete graph") {
  TestGraph g = random_regular_graph(4, 3, 5);
  ExpansionEstimate est = vertex_expansion(g);
  CHECK(est.exact);
  CHECK(est.h == Rational(1));
  CHECK(est.witness.size() == 1);
  CHECK(est.candidates == 4);
}

TEST_CASE("sampled expansion upper-bounds the exact value") {
  TestGraph g = random_regular_graph(12, 3, 5);
  ExpansionEstimate exact = vertex_expansion(g, ExpansionMode::brute_force);
  ExpansionEstimate rough = vertex_expansion(g, ExpansionMode::sampled, 500, 3);
  CHECK(exact.exact);
  CHECK(!rough.exact);
  CHECK(rough.h >= exact.h);
}

TEST_CASE("boundary family of the four cycle") {
  DomainPtr dom = boundary_domain(cycle_graph(4));
  REQUIRE(dom->size() == 4);
  CHECK(coords_of(dom->set(0)) == std::vector<std::int32_t>{2, 4});
  CHECK(coords_of(dom->set(1)) == std::vector<std::int32_t>{1, 3});
  CHECK(coords_of(dom->set(2)) == std::vector<std::int32_t>{2, 4});
  CHECK(coords_of(dom->set(3)) == std::vector<std::int32_t>{1, 3});
}

TEST_CASE("boundary family of the complete graph") {
  DomainPtr dom = boundary_domain(random_regular_graph(4, 3, 9));
  for (std::int64_t v = 0; v < 4; ++v) {
    std::vector<std::int32_t> expect;
    for (std::int32_t i = 1; i <= 4; ++i)
      if (i != v + 1) expect.push_back(i);
    CHECK(coords_of(dom->set(v)) == expect);
  }
}

TEST_CASE("boundary family shape matches the graph") {
  TestGraph g = random_regular_graph(10, 3, 2);
  DomainPtr dom = boundary_domain(g);
  CHECK(dom->size() == 10);
  for (std::int64_t s = 0; s < dom->size(); ++s) CHECK(dom->set(s).size() == 3);
}

TEST_CASE("amplification on the four cycle boundary family") {
  DomainPtr dom = boundary_domain(cycle_graph(4));
  Assignment x = Assignment::zeros(4);
  Assignment y = x;
  y.flip_bit(1);
  AmplificationReport rep = amplification_ratio(dom, x, y);
  CHECK(rep.k == 2);
  CHECK(rep.delta == Rational(1, 4));
  CHECK(rep.encoded_distance == Rational(1, 2));
  CHECK(rep.ratio == Rational(1));
  CHECK(rep.in_regime);
}

TEST_CASE("single-coordinate amplification over sliding windows") {
  TestGraph g = build_sliding_window(8, 3);
  Assignment x = Assignment::zeros(8);
  Assignment y = x;
  y.flip_bit(4);
  AmplificationReport rep = amplification_ratio(g.domain(), x, y);
  CHECK(rep.delta == Rational(1, 8));
  CHECK(rep.encoded_distance == Rational(3, 8));
  CHECK(rep.ratio == Rational(1));
  CHECK(rep.in_regime);
}

TEST_CASE("amplification validates its input") {
  DomainPtr dom = boundary_domain(cycle_graph(4));
  Assignment x = Assignment::zeros(4);
  CHECK_THROWS_AS(amplification_ratio(dom, x, x), InvalidArgument);

  std::vector<Subset> mixed;
  mixed.emplace_back(std::vector<std::int32_t>{1}, 2);
  mixed.emplace_back(std::vector<std::int32_t>{1, 2}, 2);
  auto bad = std::make_shared<const Domain>(2, std::move(mixed));
  Assignment u = Assignment::zeros(2);
  Assignment v = u;
  v.flip_bit(2);
  CHECK_THROWS_AS(amplification_ratio(bad, u, v), InvalidArgument);
  CHECK_THROWS_AS(amplification_ratio(dom, u, v), InvalidArgument);
}

TEST_CASE("expander boundaries amplify single flips by the expansion factor") {
  for (std::uint64_t seed : {21, 22, 23, 24}) {
    TestGraph g = random_regular_graph(12, 3, seed);
    ExpansionEstimate est = vertex_expansion(g, ExpansionMode::brute_force);
    DomainPtr dom = boundary_domain(g);
    Assignment x = Assignment::zeros(12);
    for (std::int32_t i = 1; i <= 12; ++i) {
      Assignment y = x;
      y.flip_bit(i);
      AmplificationReport rep = amplification_ratio(dom, x, y);
      CHECK(rep.encoded_distance >= est.h * rep.delta * Rational(rep.k));
    }
  }
}

TEST_CASE("random cubic graphs expand") {
  std::vector<Rational> hs;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    hs.push_back(vertex_expansion(random_regular_graph(14, 3, seed)).h);
  std::sort(hs.begin(), hs.end());
  CHECK(hs[hs.size() / 2] > Rational(1, 10));
}
