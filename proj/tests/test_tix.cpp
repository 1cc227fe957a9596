// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "crescent/tix.hpp"
#include "support/generators.hpp"

using namespace crescent;
namespace tg = crescent::testgen;

namespace {

PosetPtr chain2() {
  return std::make_shared<FinitePoset>(
      FinitePoset::from_generators({"bot", "top"}, {{"bot", "top"}}));
}

ValuationTable table_of(const PosetPtr& p, const Valuation& nu) {
  return ValuationTable::from_function(
      p, [&](const UpSetFin& u) { return eval(nu, OpenSet(u)); }, p->size());
}

ValuationTable table_from_pairs(const PosetPtr& p,
                                std::vector<std::pair<std::vector<std::string>, Scalar>> rows) {
  std::map<std::uint32_t, Scalar> vals;
  for (auto& [carrier, v] : rows) vals.emplace(UpSetFin(p, carrier).mask(), v);
  return ValuationTable(p, std::move(vals), p->size());
}

} // namespace

TEST_CASE("egame of a point closure is the Dirac") {
  auto p = chain2();
  Valuation e = egame(principal_downset(p, "bot"));
  Valuation d = Valuation::dirac(PosetPoint{"bot"});
  for (const auto& u : all_upsets(p)) CHECK(eval(e, OpenSet(u)) == eval(d, OpenSet(u)));
  CHECK(eval(e, OpenSet(UpSetFin(p, 0u))) == Scalar(0));
  CHECK(eval(e, OpenSet(UpSetFin(p, p->full_mask()))) == Scalar(1));
  CHECK_THROWS_AS(egame(ClosedSetFin(p, 0u)), Error);
}

TEST_CASE("peeling the two-chain worked example") {
  auto p = chain2();
  ValuationTable t = table_from_pairs(
      p, {{{}, Scalar(0)}, {{"top"}, Scalar(1)}, {{"bot", "top"}, Scalar(3)}});
  PeelResult step = peel_least(t);
  CHECK(step.r == Scalar(1));
  CHECK(step.c.mask() == p->full_mask());  // complement of U_* = empty
  CHECK(step.rest.value(UpSetFin(p, std::vector<std::string>{"top"})) == Scalar(0));
  CHECK(step.rest.value(UpSetFin(p, p->full_mask())) == Scalar(2));
}

TEST_CASE("peeling a Dirac table ends in one step") {
  auto p = chain2();
  ValuationTable t = table_of(p, Valuation::dirac(PosetPoint{"bot"}));
  PeelResult step = peel_least(t);
  CHECK(step.r == Scalar(1));
  CHECK(step.c.mask() == principal_downset(p, "bot").mask());
  CHECK(detail::finite_nonzero_values(step.rest).empty());
}

TEST_CASE("peeling a scaled characteristic valuation recovers it") {
  auto p = std::make_shared<FinitePoset>(
      FinitePoset::from_generators({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}));
  ClosedSetFin c0 = principal_downset(p, "b");
  Valuation nu = Valuation::lin_comb({{Scalar(2), egame(c0)}});
  PeelResult step = peel_least(table_of(p, nu));
  CHECK(step.r == Scalar(2));
  CHECK(step.c.mask() == c0.mask());
  CHECK(detail::finite_nonzero_values(step.rest).empty());
  CHECK_THROWS_AS(peel_least(step.rest), Error);  // zero-valuation
}

TEST_CASE("tix decomposition of the two-chain example") {
  auto p = chain2();
  ValuationTable t = table_from_pairs(
      p, {{{}, Scalar(0)}, {{"top"}, Scalar(1)}, {{"bot", "top"}, Scalar(3)}});
  TixDecomposition dec = tix_decompose(t);
  REQUIRE(dec.terms.size() == 2);
  CHECK(dec.terms[0].first == Scalar(1));
  CHECK(dec.terms[0].second.mask() == p->full_mask());      // closure of top
  CHECK(dec.terms[1].first == Scalar(2));
  CHECK(dec.terms[1].second.mask() == principal_downset(p, "bot").mask());
  // nu = delta_top + 2 delta_bot
  Valuation sum = dec.to_valuation();
  for (const auto& u : all_upsets(p)) CHECK(eval(sum, OpenSet(u)) == t.value(u));
}

TEST_CASE("decomposing zero gives nothing, infinite tables are rejected") {
  auto p = chain2();
  CHECK(tix_decompose(table_of(p, Valuation::zero())).terms.empty());
  ValuationTable bad = table_from_pairs(
      p, {{{}, Scalar(0)}, {{"top"}, Scalar(1)}, {{"bot", "top"}, Scalar::infinity()}});
  CHECK_THROWS_AS(tix_decompose(bad), Error);
}

TEST_CASE("decomposition reproduces random tables; sober gives principal terms") {
  tg::Rng rng(211);
  for (const auto& p : tg::poset_catalog_up_to(4)) {
    for (int t = 0; t < 10; ++t) {
      ValuationTable tab = tg::random_table(rng, p);
      TixDecomposition dec = tix_decompose(tab);
      CHECK(dec.terms.size() <= detail::finite_nonzero_values(tab).size());
      Valuation sum = dec.to_valuation();
      for (const auto& u : tab.upsets()) CHECK(eval(sum, OpenSet(u)) == tab.value(u));
      for (const auto& [a, c] : dec.terms) {
        CHECK(is_irreducible(p, c));
        // finite posets are sober, so every term is a point closure
        bool principal = false;
        for (std::size_t x = 0; x < p->size(); ++x)
          if (principal_downset(p, p->id(x)).mask() == c.mask()) principal = true;
        CHECK(principal);
      }
    }
  }
}

TEST_CASE("splitting the two-chain table with an infinite top") {
  auto p = chain2();
  ValuationTable t = table_from_pairs(
      p, {{{}, Scalar(0)}, {{"top"}, Scalar(1)}, {{"bot", "top"}, Scalar::infinity()}});
  InfiniteSplit split = split_infinite(t);
  CHECK(split.u_s.mask() == principal_upset(p, "top").mask());
  CHECK(split.c_infinity.mask() == principal_downset(p, "bot").mask());
  CHECK(eval(split.finite_part, OpenSet(principal_upset(p, "top"))) == Scalar(1));
  CHECK(eval(split.finite_part, OpenSet(UpSetFin(p, p->full_mask()))) == Scalar(1));
  CHECK(eval(split.infinite_part, OpenSet(UpSetFin(p, p->full_mask()))).is_infinite());
  CHECK(eval(split.infinite_part, OpenSet(principal_upset(p, "top"))) == Scalar(0));
  for (const auto& u : t.upsets())
    CHECK(eval(split.finite_part, OpenSet(u)) + eval(split.infinite_part, OpenSet(u)) ==
          t.value(u));
}

TEST_CASE("splitting the everywhere-infinite table") {
  auto p = chain2();
  std::map<std::uint32_t, Scalar> vals;
  for (const auto& u : all_upsets(p))
    vals.emplace(u.mask(), u.empty() ? Scalar(0) : Scalar::infinity());
  InfiniteSplit split = split_infinite(ValuationTable(p, std::move(vals), p->size()));
  CHECK(split.u_s.empty());
  for (const auto& u : all_upsets(p))
    CHECK(eval(split.finite_part, OpenSet(u)) == Scalar(0));
}

TEST_CASE("split rejects finite tables") {
  auto p = chain2();
  CHECK_THROWS_AS(split_infinite(table_of(p, Valuation::dirac(PosetPoint{"top"}))), Error);
}

TEST_CASE("point-continuity witnesses on finite posets") {
  auto p = chain2();
  ValuationTable dirac_top = table_of(p, Valuation::dirac(PosetPoint{"top"}));
  auto a = point_continuity_table(dirac_top, principal_upset(p, "top"), Scalar(Rat(1, 2)));
  CHECK(a == std::vector<std::string>{"top"});

  // epsilon_C with C meeting U at x: the witness {x}
  auto fence = std::make_shared<FinitePoset>(
      FinitePoset::from_generators({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}}));
  ValuationTable ec = table_of(fence, egame(principal_downset(fence, "a")));
  auto w = point_continuity_table(ec, principal_upset(fence, "a"), Scalar(0));
  CHECK(w == std::vector<std::string>{"a"});

  // two-term tix sum on the fence: witnesses stay small
  Valuation two = Valuation::lin_comb(
      {{Scalar(1), egame(principal_downset(fence, "a"))},
       {Scalar(1), egame(principal_downset(fence, "c"))}});
  ValuationTable twot = table_of(fence, two);
  UpSetFin full(fence, fence->full_mask());
  auto w2 = point_continuity_table(twot, full, Scalar(1));
  CHECK(w2.size() <= 2);
  // oracle: every open V containing w2 keeps value above r
  for (const auto& v : twot.upsets()) {
    bool contains = true;
    for (const auto& id : w2)
      if (!v.contains(id)) contains = false;
    if (contains) CHECK(Scalar(1) < twot.value(v));
  }
  CHECK_THROWS_AS(point_continuity_table(twot, full, Scalar(5)), Error);
}
