// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "crescent/poset.hpp"
#include "support/generators.hpp"

using namespace crescent;
namespace tg = crescent::testgen;

namespace {

PosetPtr chain(std::size_t n) {
  auto ids = tg::point_names(n);
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i + 1 < n; ++i) rel.emplace_back(ids[i], ids[i + 1]);
  return std::make_shared<FinitePoset>(FinitePoset::from_generators(ids, rel));
}

PosetPtr antichain(std::size_t n) {
  return std::make_shared<FinitePoset>(FinitePoset::from_generators(tg::point_names(n), {}));
}

// The definition, verbatim: every subset filtered by upward closure.
std::vector<std::uint32_t> brute_force_upsets(const FinitePoset& p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m <= p.full_mask(); ++m) {
    bool up = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (((m >> i) & 1u) && p.leq(i, j) && !((m >> j) & 1u)) up = false;
    if (up) out.push_back(m);
    if (m == p.full_mask()) break;
  }
  return out;
}

// Irreducibility straight from the open-pair definition.
bool brute_force_irreducible(const PosetPtr& p, const ClosedSetFin& c) {
  if (c.empty()) return false;
  auto ups = all_upsets(p);
  for (const auto& u : ups)
    for (const auto& v : ups) {
      bool mu = (u.mask() & c.mask()) != 0, mv = (v.mask() & c.mask()) != 0;
      if (mu && mv && ((u.mask() & v.mask() & c.mask()) == 0)) return false;
    }
  return true;
}

} // namespace

TEST_CASE("upset counts on the tiny paradigms") {
  CHECK(all_upsets(antichain(2)).size() == 4);
  auto two = all_upsets(chain(2));
  REQUIRE(two.size() == 3);
  CHECK(two[0].carrier().empty());
  CHECK(two[1].carrier() == std::vector<std::string>{"a", "b"});
  CHECK(two[2].carrier() == std::vector<std::string>{"b"});
  CHECK(all_upsets(chain(3)).size() == 4);
}

TEST_CASE("all_upsets agrees with the brute-force filter") {
  tg::Rng rng(11);
  for (const auto& p : tg::poset_catalog_up_to(4)) {
    auto ours = all_upsets(p);
    auto oracle = brute_force_upsets(*p);
    REQUIRE(ours.size() == oracle.size());
    for (const auto& u : ours)
      CHECK(std::find(oracle.begin(), oracle.end(), u.mask()) != oracle.end());
    for (std::size_t i = 1; i < ours.size(); ++i)
      CHECK(canonical_less(ours[i - 1], ours[i]));
  }
}

TEST_CASE("upsets are closed under union and intersection") {
  for (const auto& p : tg::poset_catalog_up_to(4)) {
    auto ups = all_upsets(p);
    for (const auto& u : ups)
      for (const auto& v : ups) {
        CHECK(p->is_up_closed(u.mask() | v.mask()));
        CHECK(p->is_up_closed(u.mask() & v.mask()));
      }
  }
}

TEST_CASE("complements swap upsets and closed sets") {
  auto p = chain(3);
  for (const auto& u : all_upsets(p)) {
    ClosedSetFin c = complement(u);
    CHECK(p->is_down_closed(c.mask()));
    CHECK(complement(c).mask() == u.mask());
  }
}

TEST_CASE("irreducibility examples") {
  auto p = antichain(2);
  CHECK(is_irreducible(p, principal_downset(p, "a")));
  CHECK_FALSE(is_irreducible(p, ClosedSetFin(p, p->full_mask())));  // {a,b} incomparable
  CHECK_FALSE(is_irreducible(p, ClosedSetFin(p, 0u)));
}

TEST_CASE("irreducibility matches the open-pair definition") {
  for (const auto& p : tg::poset_catalog_up_to(4)) {
    for (const auto& u : all_upsets(p)) {
      ClosedSetFin c = complement(u);
      CHECK(is_irreducible(p, c) == brute_force_irreducible(p, c));
    }
  }
}

TEST_CASE("closed sets with a greatest element are principal and irreducible") {
  for (const auto& p : tg::poset_catalog_up_to(4)) {
    for (std::size_t x = 0; x < p->size(); ++x) {
      ClosedSetFin c = principal_downset(p, p->id(x));
      CHECK(is_irreducible(p, c));
    }
  }
}

TEST_CASE("finite posets are sober") {
  CHECK(std::holds_alternative<Sober>(sober_check(chain(1))));
  auto diamond = std::make_shared<FinitePoset>(FinitePoset::from_generators(
      {"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}));
  CHECK(std::holds_alternative<Sober>(sober_check(diamond)));
  for (const auto& p : tg::poset_catalog_up_to(4))
    CHECK(std::holds_alternative<Sober>(sober_check(p)));
}

TEST_CASE("poset loader closes the relation and rejects cycles") {
  FinitePoset p = parse_poset("points: a b c\na <= b\nb <= c\n");
  CHECK(p.leq("a", "c"));
  CHECK(p.leq("a", "a"));
  CHECK_FALSE(p.leq("c", "a"));
  CHECK_THROWS_AS(parse_poset("points: a b\na <= b\nb <= a\n"), Error);
  CHECK_THROWS_AS(parse_poset("no header"), Error);
}

TEST_CASE("size limit is enforced") {
  auto big = antichain(5);
  CHECK_THROWS_AS(all_upsets(big, 4), Error);
  try {
    all_upsets(big, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == "size-limit-exceeded");
  }
}
