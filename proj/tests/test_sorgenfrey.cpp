// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "crescent/countable_open.hpp"
#include "crescent/sorgenfrey.hpp"
#include "support/generators.hpp"

using namespace crescent;
namespace tg = crescent::testgen;

namespace {

RlOpen iv(long a, long b) { return RlOpen::interval(Rat(a), Rat(b)); }

// Rational sample grid: every endpoint of the inputs plus small offsets.
std::vector<Rat> sample_grid(std::initializer_list<const RlOpen*> opens) {
  std::vector<Rat> pts;
  for (const auto* u : opens)
    for (const auto& i : u->intervals()) {
      for (const Rat& e : {i.a, i.b}) {
        pts.push_back(e - Rat(1, 7));
        pts.push_back(e);
        pts.push_back(e + Rat(1, 7));
      }
    }
  return pts;
}

} // namespace

TEST_CASE("normalize merges adjacency and overlap, sorts") {
  CHECK(RlOpen::normalize({{Rat(0), Rat(1)}, {Rat(1), Rat(2)}}) == iv(0, 2));
  CHECK(RlOpen::normalize({{Rat(0), Rat(2)}, {Rat(1), Rat(3)}}) == iv(0, 3));
  RlOpen sorted = RlOpen::normalize({{Rat(3), Rat(4)}, {Rat(0), Rat(1)}});
  REQUIRE(sorted.intervals().size() == 2);
  CHECK(sorted.intervals()[0].a == Rat(0));
  CHECK(sorted.intervals()[1].a == Rat(3));
  CHECK(RlOpen::normalize({{Rat(1), Rat(1)}}).is_empty());
}

TEST_CASE("normalize is idempotent and denotation-preserving") {
  tg::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<RlInterval> raw;
    long k = rng.uniform(1, 4);
    for (long i = 0; i < k; ++i) {
      Rat a = rng.rat(10, 5);
      raw.push_back({a, a + rng.rat(4, 5)});
    }
    RlOpen u = RlOpen::normalize(raw);
    RlOpen v = RlOpen::normalize(u.intervals());
    CHECK(u == v);
    for (const auto& x : sample_grid({&u})) {
      bool in_raw = false;
      for (const auto& i : raw)
        if (i.a < i.b && i.a <= x && x < i.b) in_raw = true;
      CHECK(u.member(x) == in_raw);
    }
  }
}

TEST_CASE("lambda on the paradigm opens") {
  CHECK(lambda_eval(iv(0, 1)) == Scalar(1));
  CHECK(lambda_eval(rl_union(iv(0, 1), RlOpen::interval(Rat(2), Rat(5, 2)))) ==
        Scalar(Rat(3, 2)));
  CHECK(lambda_eval(RlOpen()) == Scalar(0));
}

TEST_CASE("lambda modularity, exactly") {
  RlOpen u = iv(0, 2), v = iv(1, 3);
  CHECK(lambda_eval(u) + lambda_eval(v) ==
        lambda_eval(rl_union(u, v)) + lambda_eval(rl_intersect(u, v)));
  CHECK(lambda_eval(rl_union(u, v)) == Scalar(3));
  CHECK(lambda_eval(rl_intersect(u, v)) == Scalar(1));
}

TEST_CASE("set operations on half-open intervals") {
  CHECK(rl_difference(iv(0, 2), iv(1, 3)) == iv(0, 1));
  CHECK(rl_intersect(iv(0, 1), iv(1, 2)).is_empty());
  CHECK(rl_subset(RlOpen::interval(Rat(1, 2), Rat(1)), iv(0, 1)));
  CHECK_FALSE(rl_subset(iv(0, 2), iv(0, 1)));
  RlOpen split = rl_difference(iv(0, 3), iv(1, 2));
  REQUIRE(split.intervals().size() == 2);
  CHECK(split.member(Rat(0)));
  CHECK_FALSE(split.member(Rat(3, 2)));
  CHECK(split.member(Rat(2)));
}

TEST_CASE("boolean ring laws hold on random opens") {
  tg::Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    RlOpen u = tg::random_rlopen(rng), v = tg::random_rlopen(rng), w = tg::random_rlopen(rng);
    CHECK(rl_union(rl_difference(u, v), rl_intersect(u, v)) == u);
    CHECK(rl_intersect(rl_difference(u, v), v).is_empty());
    CHECK(rl_intersect(u, rl_union(v, w)) ==
          rl_union(rl_intersect(u, v), rl_intersect(u, w)));
    CHECK(rl_difference(u, rl_union(v, w)) ==
          rl_difference(rl_difference(u, v), w));
    CHECK(rl_subset(rl_intersect(u, v), u));
    CHECK(rl_subset(u, rl_union(u, v)));
  }
}

TEST_CASE("shrink_interval picks min(bound, interval end - x)") {
  CHECK(shrink_interval(Rat(0), Rat(1, 4), iv(0, 1)) == Rat(1, 4));
  CHECK(shrink_interval(Rat(1, 2), Rat(2), iv(0, 1)) == Rat(1, 2));
  RlOpen u = rl_union(iv(0, 1), RlOpen::interval(Rat(3), Rat(7, 2)));
  CHECK(shrink_interval(Rat(3), Rat(1, 8), u) == Rat(1, 8));
  CHECK_THROWS_AS(shrink_interval(Rat(5), Rat(1), u), Error);
}

TEST_CASE("measure upper bound: finite part plus geometric tails") {
  CountableRlOpen v;
  v.finite_part = iv(0, 1);
  CHECK(measure_upper_bound(v) == lambda_eval(v.finite_part));

  ChainRl halves;
  halves.limit = Rat(0);
  halves.coeff = Rat(1);
  halves.ratio = Rat(1, 2);
  halves.include_limit = true;
  v.tails.push_back(TailFamily{halves, 0, Rat(1, 2)});
  CHECK(measure_upper_bound(v) == Scalar(Rat(3, 2)));  // 1 + 1/2

  CountableRlOpen two;
  two.tails.push_back(TailFamily{halves, 0, Rat(1, 4)});
  two.tails.push_back(TailFamily{halves, 0, Rat(1, 4)});
  CHECK(measure_upper_bound(two) == Scalar(Rat(1, 2)));
}

TEST_CASE("upper bound dominates every finite sub-union") {
  ChainRl halves;
  halves.limit = Rat(0);
  halves.coeff = Rat(1);
  halves.ratio = Rat(1, 2);
  CountableRlOpen v;
  v.finite_part = iv(4, 5);
  v.tails.push_back(TailFamily{halves, 1, Rat(1, 3)});
  std::vector<RlInterval> pieces = v.finite_part.intervals();
  for (long j = 1; j <= 12; ++j) {
    Rat x = halves.point(j);
    pieces.push_back({x, x + v.tails[0].interval_length(j)});
    CHECK(lambda_eval(RlOpen::normalize(pieces)) <= measure_upper_bound(v));
  }
}

TEST_CASE("tail membership solves the anchor intervals exactly") {
  ChainRl halves;
  halves.limit = Rat(0);
  halves.coeff = Rat(1);
  halves.ratio = Rat(1, 2);
  TailFamily t{halves, 0, Rat(1, 2)};
  // interval at index j: [1/2^j, 1/2^j + 1/2^{j+2}[
  CHECK(t.member(Rat(1)));
  CHECK(t.member(Rat(1, 2)));
  CHECK(t.member(Rat(9, 8)));        // inside [1, 5/4[
  CHECK_FALSE(t.member(Rat(5, 4)));  // the open end
  CHECK_FALSE(t.member(Rat(0)));
  CHECK_FALSE(t.member(Rat(3, 8)));  // between anchors
}
