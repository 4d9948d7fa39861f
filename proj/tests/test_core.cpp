#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <vector>

#include "dpt/dpt.hpp"

using namespace dpt;

namespace {

DomainPtr make_domain(std::int32_t n, std::vector<std::vector<std::int32_t>> raw) {
  std::vector<Subset> sets;
  for (auto& coords : raw) sets.emplace_back(std::move(coords), n);
  return std::make_shared<const Domain>(n, std::move(sets));
}

Assignment from_bits(std::vector<std::uint8_t> bits) { return Assignment(std::move(bits)); }

}  // namespace

TEST_CASE("subsets canonicalize and reject bad coordinates") {
  Subset s({3, 1}, 4);
  CHECK(s.size() == 2);
  CHECK(s.coord(0) == 1);
  CHECK(s.coord(1) == 3);
  CHECK(s.contains(3));
  CHECK(!s.contains(2));
  CHECK(s.position_of(3) == 1);
  CHECK(s.position_of(2) == -1);
  CHECK_THROWS_AS(Subset({0}, 4), InvalidArgument);
  CHECK_THROWS_AS(Subset({5}, 4), InvalidArgument);
  CHECK_THROWS_AS(Subset({2, 2}, 4), InvalidArgument);
}

TEST_CASE("domains index their coordinates") {
  auto dom = make_domain(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  CHECK(dom->n() == 4);
  CHECK(dom->size() == 4);
  auto v2 = dom->sets_in(2);
  REQUIRE(v2.size() == 2);
  CHECK(v2[0] == 0);
  CHECK(v2[1] == 1);
  CHECK(dom->covers(1));
  CHECK_THROWS_AS(dom->sets_in(0), InvalidArgument);
  CHECK_THROWS_AS(dom->sets_in(5), InvalidArgument);

  auto partial = make_domain(3, {{1, 2}});
  CHECK(!partial->covers(3));
}

TEST_CASE("encoding projects the assignment onto each set") {
  auto dom = make_domain(4, {{1, 3}, {2, 4}, {1, 2, 3, 4}});
  Assignment a = from_bits({1, 0, 1, 0});
  DPTable f = dp_encode(a, dom);
  CHECK(f.value(0).bits() == std::vector<std::uint8_t>{1, 1});
  CHECK(f.value(1).bits() == std::vector<std::uint8_t>{0, 0});
  CHECK(f.value(2).bits() == std::vector<std::uint8_t>{1, 0, 1, 0});

  DPTable zeros = dp_encode(Assignment::zeros(4), dom);
  for (std::int64_t s = 0; s < zeros.size(); ++s)
    for (auto b : zeros.value(s).bits()) CHECK(b == 0);

  CHECK_THROWS_AS(dp_encode(Assignment::zeros(3), dom), InvalidArgument);
}

TEST_CASE("encoding round-trips through restriction") {
  auto dom = make_domain(6, {{1, 2, 3}, {2, 4, 6}, {5}, {1, 6}});
  auto eng = make_engine(17, 0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::uint8_t> bits(6);
    for (auto& b : bits) b = static_cast<std::uint8_t>(bounded(eng, 2));
    Assignment a = from_bits(bits);
    DPTable f = dp_encode(a, dom);
    for (std::int64_t s = 0; s < dom->size(); ++s) {
      const Subset& sub = dom->set(s);
      for (std::int32_t j = 0; j < sub.size(); ++j)
        CHECK(f.value(s).bit(j) == a.bit(sub.coord(j)));
    }
  }
}

TEST_CASE("table distance counts whole-set disagreements") {
  auto dom = make_domain(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  Assignment a = from_bits({1, 0, 1, 0});
  DPTable f = dp_encode(a, dom);
  DPTable g = dp_encode(a, dom);
  CHECK(dp_distance(f, g) == Rational(0));

  g.value(1).flip_bit(0);
  CHECK(dp_distance(f, g) == Rational(1, 4));

  g.value(1).flip_bit(1);
  CHECK(dp_distance(f, g) == Rational(1, 4));

  auto other = make_domain(4, {{1, 2}, {2, 3}});
  DPTable h = dp_encode(a, other);
  CHECK_THROWS_AS(dp_distance(f, h), InvalidArgument);
}

TEST_CASE("table distance is a pseudometric") {
  auto dom = make_domain(5, {{1, 2}, {2, 3, 4}, {4, 5}, {1, 5}, {3}});
  auto eng = make_engine(23, 0);
  auto random_table = [&] {
    std::vector<LocalAssignment> values;
    for (std::int64_t s = 0; s < dom->size(); ++s) {
      std::vector<std::uint8_t> bits(dom->set(s).size());
      for (auto& b : bits) b = static_cast<std::uint8_t>(bounded(eng, 2));
      values.emplace_back(std::move(bits));
    }
    return DPTable(dom, std::move(values));
  };
  for (int rep = 0; rep < 30; ++rep) {
    DPTable x = random_table(), y = random_table(), z = random_table();
    CHECK(dp_distance(x, x) == Rational(0));
    CHECK(dp_distance(x, y) == dp_distance(y, x));
    CHECK(dp_distance(x, z) <= dp_distance(x, y) + dp_distance(y, z));
  }
}

TEST_CASE("closest codeword finds a codeword exactly") {
  auto dom = make_domain(5, {{1, 2, 5}, {2, 3}, {3, 4, 5}});
  Assignment a = from_bits({0, 1, 1, 0, 1});
  DPTable f = dp_encode(a, dom);
  ClosestCodeword best = closest_codeword(f);
  CHECK(best.distance == Rational(0));
  for (std::int32_t i = 1; i <= 5; ++i)
    if (dom->covers(i)) CHECK(best.assignment.bit(i) == a.bit(i));
}

TEST_CASE("closest codeword on the three-set triangle") {
  auto dom = make_domain(3, {{1, 2}, {1, 3}, {2, 3}});
  DPTable f(dom, {LocalAssignment({1, 0}), LocalAssignment({1, 1}), LocalAssignment({1, 1})});
  ClosestCodeword best = closest_codeword(f);
  CHECK(best.distance == Rational(1, 3));
  CHECK(best.assignment.bits() == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("closest codeword refuses large ground sets") {
  auto dom = make_domain(25, {{1, 2}});
  DPTable f = dp_encode(Assignment::zeros(25), dom);
  CHECK_THROWS_AS(closest_codeword(f), UnsupportedSize);
}

TEST_CASE("decoder never beats the exhaustive codeword search") {
  auto dom = make_domain(6, {{1, 2, 3}, {3, 4}, {4, 5, 6}, {1, 6}, {2, 5}});
  auto eng = make_engine(31, 0);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<LocalAssignment> values;
    for (std::int64_t s = 0; s < dom->size(); ++s) {
      std::vector<std::uint8_t> bits(dom->set(s).size());
      for (auto& b : bits) b = static_cast<std::uint8_t>(bounded(eng, 2));
      values.emplace_back(std::move(bits));
    }
    DPTable f(dom, std::move(values));
    Rational oracle = closest_codeword(f).distance;
    Rational decoded = dp_distance(f, majority_decode(f).table);
    CHECK(oracle <= decoded);
  }
}

TEST_CASE("single flips on the half slice decode optimally") {
  TestGraph g = build_clique_slice(4);
  Assignment a = from_bits({1, 0, 1, 1});
  DPTable f = per_set_single_flip(a, g.domain(), 5);
  Rational oracle = closest_codeword(f).distance;
  Rational decoded = dp_distance(f, majority_decode(f).table);
  CHECK(oracle == decoded);
}

TEST_CASE("table construction validates lengths") {
  auto dom = make_domain(3, {{1, 2}, {3}});
  CHECK_THROWS_AS(DPTable(dom, {LocalAssignment({1})}), InvalidArgument);
  CHECK_THROWS_AS(DPTable(dom, {LocalAssignment({1}), LocalAssignment({0})}), InvalidArgument);
  CHECK_NOTHROW(DPTable(dom, {LocalAssignment({1, 0}), LocalAssignment({0})}));
}
