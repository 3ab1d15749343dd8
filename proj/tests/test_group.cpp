#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "vilenkin/group.hpp"

using namespace vilenkin;

namespace {

/// Every radix list with M_N <= limit built from radices 2..5, up to depth 6.
std::vector<std::vector<int>> small_specs(Index limit) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> frontier = {{}};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto &r : frontier) {
      for (int m = 2; m <= 5; ++m) {
        auto c = r;
        c.push_back(m);
        Index size = 1;
        for (int x : c) size *= x;
        if (size > limit || c.size() > 6) continue;
        out.push_back(c);
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("cumulative products") {
  CHECK(make_group({2, 2, 2}, 3).cumprods() == std::vector<Index>{1, 2, 4, 8});
  CHECK(make_group({2, 3, 4}, 3).cumprods() == std::vector<Index>{1, 2, 6, 24});
  CHECK_THROWS_AS(make_group({1, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_group({2, 2}, 3), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec({2, 65}, 2), std::invalid_argument);
  CHECK_NOTHROW(GroupSpec({2, 65}, 2, 100));
}

TEST_CASE("truncation keeps the spare radices") {
  const auto g = parse_group("2,3,4,5", 2);
  CHECK(g.size() == 6);
  CHECK(g.can_refine());
  CHECK(g.at_level(4).size() == 120);
  CHECK(g.describe() == "2;3@2");
  CHECK_FALSE(g.at_level(4).can_refine());
  CHECK(parse_radices(" 2, 3 ,4") == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(parse_radices("2,,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_radices("2;3"), std::invalid_argument);
  CHECK(make_group({2, 3, 4}, 3).radix_lcm() == 12);
}

TEST_CASE("digits of an index") {
  const auto g = make_group({2, 3, 4}, 3);
  CHECK(index_to_digits(5, g) == std::vector<int>{1, 2, 0});
  CHECK(index_to_digits(0, g) == std::vector<int>{0, 0, 0});
  CHECK(index_to_digits(23, g) == std::vector<int>{1, 2, 3});
  for (Index n : {0, 5, 23}) CHECK(digits_to_index(index_to_digits(n, g), g) == n);
  CHECK_THROWS(index_to_digits(24, g));
  CHECK_THROWS(digits_to_index({0, 3, 0}, g));
  CHECK(digit(23, 2, g) == 3);
}

TEST_CASE("group subtraction") {
  const auto g = make_group({2, 3}, 2);
  CHECK(point_sub(Point{{1, 2}}, Point{{0, 1}}, g) == Point{{1, 1}});
  CHECK(point_sub(Point{{0, 0}}, Point{{1, 2}}, g) == Point{{1, 1}});
  CHECK(point_sub(Point{{1, 2}}, Point{{1, 2}}, g) == Point{{0, 0}});
}

TEST_CASE("leading index") {
  const auto g = make_group({2, 3, 4}, 3);
  CHECK(leading_index(1, g) == 0);
  CHECK(leading_index(7, g) == 2);
  for (int k = 0; k <= 3; ++k) CHECK(leading_index(g.cumprod(k), g) == k);
  CHECK_THROWS(leading_index(0, g));
  CHECK_THROWS(leading_index(25, g));
}

TEST_CASE("group laws agree with digitwise arithmetic for every spec with M_N <= 64") {
  for (const auto &radices : small_specs(64)) {
    const auto g = make_group(radices, static_cast<int>(radices.size()));
    const oracle::Group o{radices};
    for (Index x = 0; x < g.size(); ++x) {
      REQUIRE(index_of(point_of(x, g), g) == x);
      REQUIRE(point_of(x, g).digits == o.digits(x));
      CHECK(index_sub(x, x, g) == 0);
      for (Index t = 0; t < g.size(); ++t) {
        const Index d = index_sub(x, t, g);
        REQUIRE(d == o.sub(x, t));
        REQUIRE(index_of(point_add(point_of(d, g), point_of(t, g), g), g) == x);
      }
    }
  }
}

TEST_CASE("annulus example on the 4-point group") {
  const auto g = make_group({2, 2}, 2);
  const auto parts = annulus_partition(g);
  REQUIRE(parts.size() == 3);
  // (1,1) -> 3, (1,0) -> 1, (0,1) -> 2
  CHECK(parts[0].k == 0);
  CHECK(parts[0].l == 1);
  CHECK(parts[0].members == std::vector<Index>{3});
  CHECK(parts[1].k == 0);
  CHECK(parts[1].l == 2);
  CHECK(parts[1].members == std::vector<Index>{1});
  CHECK(parts[2].k == 1);
  CHECK(parts[2].l == 2);
  CHECK(parts[2].members == std::vector<Index>{2});
}

TEST_CASE("annulus pieces are a disjoint cover of the complement for M_N <= 256") {
  for (const auto &radices : small_specs(256)) {
    const auto g = make_group(radices, static_cast<int>(radices.size()));
    const oracle::Group o{radices};
    for (int level = 1; level <= g.level(); ++level) {
      std::vector<int> seen(static_cast<std::size_t>(g.size()), 0);
      for (const auto &piece : annulus_partition(g, level)) {
        REQUIRE(piece.k < piece.l);
        REQUIRE(piece.l <= level);
        for (Index x : piece.members) {
          ++seen[static_cast<std::size_t>(x)];
          // First two nonzero digits among the leading `level` ones.
          const auto d = o.digits(x);
          std::vector<int> nz;
          for (int i = 0; i < level; ++i) if (d[i] != 0) nz.push_back(i);
          REQUIRE(!nz.empty());
          REQUIRE(nz[0] == piece.k);
          REQUIRE((nz.size() > 1 ? nz[1] : level) == piece.l);
        }
      }
      for (Index x = 0; x < g.size(); ++x) {
        const bool inside = x % g.cumprod(level) == 0;
        REQUIRE(seen[static_cast<std::size_t>(x)] == (inside ? 0 : 1));
        REQUIRE(in_interval(x, level, g) == inside);
      }
    }
    Index total = 0;
    for (const auto &piece : annulus_partition(g)) total += static_cast<Index>(piece.members.size());
    CHECK(total == g.size() - 1);
  }
}
