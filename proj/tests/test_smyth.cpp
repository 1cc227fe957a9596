// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "crescent/smyth.hpp"
#include "support/generators.hpp"

using namespace crescent;
namespace tg = crescent::testgen;

namespace {

RlOpen iv(long a, long b) { return RlOpen::interval(Rat(a), Rat(b)); }

ChainRl desc(Rat limit, Rat c, Rat q, bool include_limit, std::vector<Rat> prefix = {}) {
  ChainRl out;
  out.limit = std::move(limit);
  out.coeff = std::move(c);
  out.ratio = std::move(q);
  out.include_limit = include_limit;
  out.prefix = std::move(prefix);
  out.validate();
  return out;
}

ChainRl asc(Rat limit, Rat c, Rat q, bool include_limit) {
  ChainRl out;
  out.limit = std::move(limit);
  out.coeff = std::move(c);
  out.ratio = std::move(q);
  out.dir = ChainRl::Direction::ascending;
  out.include_limit = include_limit;
  out.validate();
  return out;
}

SmythElem finite_elem(std::vector<Rat> pts) {
  std::sort(pts.begin(), pts.end());
  return SmythElem({{FiniteBlock{std::move(pts)}}});
}

// halves: {1, 1/2, 1/4, ...} with or without the limit 0
ChainRl halves(bool include_limit) { return desc(Rat(0), Rat(1), Rat(1, 2), include_limit); }

} // namespace

TEST_CASE("compactness of the three paradigm candidates") {
  CompactCandidate with_limit{{ChainRl(halves(true))}};
  CHECK(std::holds_alternative<CompactOk>(is_compact(with_limit)));

  CompactCandidate without{{ChainRl(halves(false))}};
  auto v2 = is_compact(without);
  REQUIRE(std::holds_alternative<MissingInfimum>(v2));
  CHECK(std::get<MissingInfimum>(v2).infimum == Rat(0));

  CompactCandidate ascending{{ChainRl(asc(Rat(1), Rat(1), Rat(1, 2), true))}};
  auto v3 = is_compact(ascending);
  REQUIRE(std::holds_alternative<AscendingCover>(v3));
  const auto& cover = std::get<AscendingCover>(v3);
  CHECK(cover.first == Rat(0));  // 1 - 1*(1/2)^0
  CHECK(cover.sup == Rat(1));
  // each step piece contains exactly its own chain point
  for (std::uint32_t n = 0; n < 6; ++n) {
    RlInterval piece = cover.piece(n);
    CHECK(piece.a == cover.chain.point(n));
    CHECK(piece.a < piece.b);
    for (std::uint32_t m = 0; m < 8; ++m) {
      bool inside = piece.a <= cover.chain.point(m) && cover.chain.point(m) < piece.b;
      CHECK(inside == (m == n));
    }
  }
}

TEST_CASE("a limit supplied by another block makes the candidate compact") {
  CompactCandidate cand{{FiniteBlock{{Rat(0)}}, ChainRl(halves(false))}};
  CHECK(std::holds_alternative<CompactOk>(is_compact(cand)));
}

TEST_CASE("membership solves the geometric closed form") {
  CompactCandidate cand{{ChainRl(halves(false))}};
  CHECK(cand.member(Rat(1, 4)));
  CHECK_FALSE(cand.member(Rat(1, 3)));
  CHECK_FALSE(cand.member(Rat(0)));
  CompactCandidate with{{ChainRl(halves(true))}};
  CHECK(with.member(Rat(0)));
  CHECK_FALSE(with.member(Rat(2)));
  CompactCandidate pre{{ChainRl(desc(Rat(0), Rat(1), Rat(1, 2), true, {Rat(7)}))}};
  CHECK(pre.member(Rat(7)));
}

TEST_CASE("compactness decision matches the characterization on random candidates") {
  tg::Rng rng(401);
  for (int t = 0; t < 200; ++t) {
    CompactCandidate cand = tg::random_candidate(rng);
    auto verdict = is_compact(cand);
    // direct check of the two conditions, written against the definitions
    bool has_ascending = false;
    bool inf_closed = true;
    for (const auto& blk : cand.blocks) {
      const auto* ch = std::get_if<ChainRl>(&blk);
      if (!ch) continue;
      if (!ch->descending()) has_ascending = true;
      if (ch->descending() && !cand.member(ch->limit)) inf_closed = false;
    }
    bool compact = !has_ascending && inf_closed;
    CHECK(compact == std::holds_alternative<CompactOk>(verdict));
    if (has_ascending) CHECK(std::holds_alternative<AscendingCover>(verdict));
  }
}

TEST_CASE("smyth_leq is reverse inclusion") {
  SmythElem q1({{ChainRl(halves(true))}});
  SmythElem q2 = finite_elem({Rat(0)});
  CHECK(smyth_leq(q1, q2));        // {0} inside the chain
  CHECK_FALSE(smyth_leq(q2, q1));  // the chain is not inside {0}
  CHECK_FALSE(smyth_leq(finite_elem({Rat(0)}), finite_elem({Rat(1)})));
  CHECK(smyth_leq(q1, q1));
}

TEST_CASE("chain-in-chain subset analysis") {
  // powers of 1/4 sit inside powers of 1/2
  CompactCandidate quarters{{ChainRl(desc(Rat(0), Rat(1), Rat(1, 4), true))}};
  CompactCandidate halved{{ChainRl(halves(true))}};
  CHECK(candidate_subset(quarters, halved));
  CHECK_FALSE(candidate_subset(halved, quarters));  // 1/2 is no power of 1/4

  // shifted coefficient: {1/2 * (1/2)^j} inside {(1/2)^i}
  CompactCandidate shifted{{ChainRl(desc(Rat(0), Rat(1, 2), Rat(1, 2), true))}};
  CHECK(candidate_subset(shifted, halved));
  CHECK_FALSE(candidate_subset(halved, shifted));  // the point 1 escapes

  // thirds vs halves: multiplicatively independent, only finitely absorbable
  CompactCandidate thirds{{ChainRl(desc(Rat(0), Rat(1), Rat(1, 3), true))}};
  CHECK_FALSE(candidate_subset(thirds, halved));

  // same ratio, coefficient not a power: 3*(1/2)^j vs (1/2)^i
  CompactCandidate tripled{{ChainRl(desc(Rat(0), Rat(3), Rat(1, 2), true))}};
  CHECK_FALSE(candidate_subset(tripled, halved));

  // different limits
  CompactCandidate off{{ChainRl(desc(Rat(1), Rat(1), Rat(1, 2), true))}};
  CHECK_FALSE(candidate_subset(off, halved));

  // 2/3 powers against 4/9 powers: q' = q^2
  CompactCandidate q23{{ChainRl(desc(Rat(0), Rat(1), Rat(2, 3), true))}};
  CompactCandidate q49{{ChainRl(desc(Rat(0), Rat(1), Rat(4, 9), true))}};
  CHECK(candidate_subset(q49, q23));
  CHECK_FALSE(candidate_subset(q23, q49));
}

TEST_CASE("union of two interleaved chains covers a finer chain") {
  // {(1/2)^j} splits into even and odd powers, both chains with ratio 1/4
  CompactCandidate fine{{ChainRl(halves(true))}};
  CompactCandidate parts{{ChainRl(desc(Rat(0), Rat(1), Rat(1, 4), true)),
                          ChainRl(desc(Rat(0), Rat(1, 2), Rat(1, 4), false))}};
  CHECK(candidate_subset(fine, parts));
  CHECK(candidate_subset(parts, fine));
}

TEST_CASE("smyth_leq is a partial order on a mixed universe") {
  std::vector<SmythElem> universe;
  universe.push_back(finite_elem({Rat(0)}));
  universe.push_back(finite_elem({Rat(0), Rat(1)}));
  universe.push_back(SmythElem({{ChainRl(halves(true))}}));
  universe.push_back(SmythElem({{ChainRl(desc(Rat(0), Rat(1), Rat(1, 4), true))}}));
  universe.push_back(
      SmythElem({{ChainRl(halves(false)), FiniteBlock{{Rat(0)}}}}));
  universe.push_back(SmythElem({{ChainRl(desc(Rat(2), Rat(1), Rat(1, 2), true))}}));
  for (const auto& a : universe) CHECK(smyth_leq(a, a));
  for (const auto& a : universe)
    for (const auto& b : universe)
      for (const auto& c : universe)
        if (smyth_leq(a, b) && smyth_leq(b, c)) CHECK(smyth_leq(a, c));
  for (const auto& a : universe)
    for (const auto& b : universe)
      if (smyth_leq(a, b) && smyth_leq(b, a)) CHECK(candidate_equal(a.rep(), b.rep()));
}

TEST_CASE("in_box decides containment in an open") {
  SmythElem q({{ChainRl(halves(true))}});
  CHECK(in_box(q, iv(0, 2)));
  CHECK_FALSE(in_box(q, RlOpen::interval(Rat(0), Rat(1, 2))));  // the point 1 escapes
  CHECK(in_box(finite_elem({Rat(0), Rat(3)}), rl_union(iv(0, 1), iv(3, 4))));
  CHECK_FALSE(in_box(q, rl_union(RlOpen::interval(Rat(1, 8), Rat(2)), iv(3, 4))));
  // a chain without its own limit still needs the limit's interval
  SmythElem q2({{FiniteBlock{{Rat(0)}}, ChainRl(halves(false))}});
  CHECK(in_box(q2, iv(0, 2)));
  CHECK_FALSE(in_box(q2, rl_union(RlOpen::interval(Rat(1, 16), Rat(2)), iv(-1, 0))));
}

TEST_CASE("box opens form a lattice matching element membership") {
  tg::Rng rng(419);
  for (int t = 0; t < 60; ++t) {
    SmythOpen a =
        SmythOpen::of_boxes({tg::random_rlopen(rng, 2, 4), tg::random_rlopen(rng, 2, 4)});
    SmythOpen b = SmythOpen::of_boxes({tg::random_rlopen(rng, 2, 4)});
    SmythElem q = tg::random_elem_in(rng, Rat(-4), Rat(4));
    bool in_a = a.member(q), in_b = b.member(q);
    CHECK(smyth_union(a, b).member(q) == (in_a || in_b));
    // Box(U) n Box(V) = Box(U n V), distributed over the unions
    bool in_meet = false;
    for (const auto& x : a.boxes())
      for (const auto& y : b.boxes())
        if (in_box(q, rl_intersect(x, y))) in_meet = true;
    CHECK(smyth_intersect(a, b).member(q) == in_meet);
    CHECK(smyth_subset(smyth_intersect(a, b), a));
    CHECK(smyth_subset(a, smyth_union(a, b)));
  }
}

TEST_CASE("lambda_bar evaluates the trace on the line") {
  CHECK(lambda_bar(SmythOpen::box(iv(0, 1))) == Scalar(1));
  CHECK(lambda_bar(SmythOpen::of_boxes({iv(0, 1), iv(0, 2)})) == Scalar(2));  // absorption
  CHECK(lambda_bar(SmythOpen()) == Scalar(0));
}

TEST_CASE("monotone convergence probe for lambda_bar") {
  Scalar prev(0);
  for (int n = 1; n <= 20; ++n) {
    Rat end = Rat(1) - pow_rat(Rat(1, 2), n);
    Scalar v = lambda_bar(SmythOpen::box(RlOpen::interval(Rat(0), end)));
    CHECK(v == Scalar(end));
    CHECK(prev < v);
    prev = v;
  }
  CHECK(lambda_bar(SmythOpen::box(iv(0, 1))) == Scalar(1));
}

TEST_CASE("the worked refutation example is reproduced bit by bit") {
  std::vector<SmythElem> a{finite_elem({Rat(0), Rat(1, 2)})};
  PCRefutationCertificate cert = refute_point_continuity(iv(0, 1), Scalar(Rat(1, 2)), a);
  RlOpen expect =
      RlOpen::normalize({{Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(1, 2) + Rat(1, 8)}});
  CHECK(cert.v.finite_part == expect);
  CHECK(cert.v.tails.empty());
  CHECK(cert.bound == Scalar(Rat(3, 8)));
  for (const auto& [name, ok] : verify_pc_certificate(cert)) {
    INFO(name);
    CHECK(ok);
  }
}

TEST_CASE("refutation with a single point") {
  std::vector<SmythElem> a{finite_elem({Rat(0)})};
  PCRefutationCertificate cert = refute_point_continuity(iv(0, 1), Scalar(Rat(1, 2)), a);
  CHECK(cert.v.finite_part == RlOpen::interval(Rat(0), Rat(1, 4)));
  CHECK(cert.bound == Scalar(Rat(1, 4)));
}

TEST_CASE("refutation with a chain element carries a geometric tail") {
  SmythElem q({{ChainRl(desc(Rat(0), Rat(1, 2), Rat(1, 2), true))}});
  PCRefutationCertificate cert = refute_point_continuity(iv(0, 1), Scalar(Rat(1, 2)), {q});
  CHECK(cert.bound <= Scalar(Rat(1, 2)));
  REQUIRE(cert.v.tails.size() == 1);
  for (const auto& [name, ok] : verify_pc_certificate(cert)) {
    INFO(name);
    CHECK(ok);
  }
}

TEST_CASE("refutation preconditions") {
  CHECK_THROWS_AS(refute_point_continuity(iv(0, 1), Scalar(2), {finite_elem({Rat(0)})}),
                  Error);
  CHECK_THROWS_AS(
      refute_point_continuity(iv(0, 1), Scalar(Rat(1, 2)), {finite_elem({Rat(5)})}), Error);
  PCRefutationCertificate empty = refute_point_continuity(iv(0, 1), Scalar(Rat(1, 2)), {});
  CHECK(empty.bound == Scalar(0));
}

TEST_CASE("the refuter succeeds on every random finite subset of Box([0,1[)") {
  tg::Rng rng(431);
  for (int t = 0; t < 100; ++t) {
    std::vector<SmythElem> a;
    long m = rng.uniform(1, 5);
    for (long i = 0; i < m; ++i) a.push_back(tg::random_elem_in(rng, Rat(0), Rat(1)));
    PCRefutationCertificate cert = refute_point_continuity(iv(0, 1), Scalar(Rat(1, 2)), a);
    CHECK(cert.bound <= Scalar(Rat(1, 2)));
    for (const auto& [name, ok] : verify_pc_certificate(cert)) {
      INFO(name);
      CHECK(ok);
    }
  }
}

TEST_CASE("consonance refuter worked examples") {
  ConsonanceCertificate c1 = consonance_refuter(finite_elem({Rat(0)}), Scalar(1));
  CHECK(c1.v.finite_part == RlOpen::interval(Rat(0), Rat(1, 2)));
  CHECK(c1.bound == Scalar(Rat(1, 2)));

  ConsonanceCertificate c2 =
      consonance_refuter(finite_elem({Rat(0), Rat(1)}), Scalar(Rat(1, 2)));
  CHECK(c2.v.finite_part == RlOpen::normalize({{Rat(0), Rat(1, 4)}, {Rat(1), Rat(9, 8)}}));
  CHECK(c2.bound == Scalar(Rat(3, 8)));

  SmythElem q({{ChainRl(halves(true))}});
  ConsonanceCertificate c3 = consonance_refuter(q, Scalar(1));
  CHECK(c3.bound <= Scalar(1));
  for (const auto& [name, ok] : verify_consonance_certificate(c3)) {
    INFO(name);
    CHECK(ok);
  }
}

TEST_CASE("consonance refuter on random elements") {
  tg::Rng rng(433);
  for (int t = 0; t < 50; ++t) {
    SmythElem q = tg::random_elem_in(rng, Rat(-2), Rat(2));
    Scalar r(rng.pos_rat(4, 4));
    ConsonanceCertificate cert = consonance_refuter(q, r);
    CHECK(cert.bound <= r);
    for (const auto& [name, ok] : verify_consonance_certificate(cert)) {
      INFO(name);
      CHECK(ok);
    }
  }
}

TEST_CASE("embedding agreement at the box-basis level") {
  std::vector<Rat> samples{Rat(0), Rat(1, 2), Rat(1), Rat(2)};
  CHECK(std::holds_alternative<Agreement>(dcpo_model_agreement(iv(0, 1), samples)));
  CHECK(std::holds_alternative<Agreement>(dcpo_model_agreement(RlOpen(), samples)));
  RlOpen u = rl_union(iv(0, 1), iv(2, 3));
  std::vector<Rat> endpoints{Rat(0), Rat(1), Rat(2), Rat(3)};
  CHECK(std::holds_alternative<Agreement>(dcpo_model_agreement(u, endpoints)));
}

TEST_CASE("smyth elements must certify compactness and be nonempty") {
  CHECK_THROWS_AS(SmythElem({{ChainRl(halves(false))}}), Error);
  CHECK_THROWS_AS(SmythElem({{FiniteBlock{{}}}}), Error);
  CHECK_THROWS_AS(SmythElem({{ChainRl(asc(Rat(1), Rat(1), Rat(1, 2), true))}}), Error);
}

namespace {

// Sampled points of a candidate: all finite-phase points plus a window of
// generated chain points.
std::vector<Rat> sample_points(const CompactCandidate& cand, long depth) {
  std::vector<Rat> pts;
  auto en = enumerate_candidate(cand);
  pts = en.finite_points;
  for (const auto& c : en.chains)
    for (long j = 0; j < depth; ++j) pts.push_back(c.point(j));
  return pts;
}

} // namespace

TEST_CASE("subset refutations come with sampled escapee points") {
  tg::Rng rng(521);
  long decided_false = 0;
  for (int t = 0; t < 300; ++t) {
    SmythElem qa = tg::random_elem_in(rng, Rat(0), Rat(2), 3);
    SmythElem qb = tg::random_elem_in(rng, Rat(0), Rat(2), 3);
    if (candidate_subset(qa.rep(), qb.rep())) {
      for (const auto& x : sample_points(qa.rep(), 25)) CHECK(qb.rep().member(x));
    } else {
      ++decided_false;
      bool witness = false;
      for (const auto& x : sample_points(qa.rep(), 80))
        if (!qb.rep().member(x)) witness = true;
      CHECK(witness);
    }
  }
  CHECK(decided_false > 0);  // independent random pairs are virtually never nested
}

TEST_CASE("constructed supersets are recognized") {
  tg::Rng rng(547);
  for (int t = 0; t < 100; ++t) {
    SmythElem qa = tg::random_elem_in(rng, Rat(0), Rat(2), 3);
    CompactCandidate bigger = qa.rep();
    SmythElem extra = tg::random_elem_in(rng, Rat(0), Rat(2), 2);
    for (const auto& blk : extra.rep().blocks) bigger.blocks.push_back(blk);
    CHECK(candidate_subset(qa.rep(), bigger));
    CHECK(smyth_leq(SmythElem(bigger), qa));  // reverse inclusion order
    for (const auto& x : sample_points(qa.rep(), 25)) CHECK(bigger.member(x));
  }
}

TEST_CASE("a chain equals its even/odd split at any ratio") {
  tg::Rng rng(523);
  for (int t = 0; t < 40; ++t) {
    Rat q(rng.uniform(1, 4), rng.uniform(5, 7));
    Rat c = rng.pos_rat(4, 4);
    Rat limit = rng.rat(4, 4);
    ChainRl whole{limit, c, q, ChainRl::Direction::descending, true, {}};
    ChainRl even{limit, c, q * q, ChainRl::Direction::descending, true, {}};
    ChainRl odd{limit, c * q, q * q, ChainRl::Direction::descending, false, {}};
    CompactCandidate a{{ChainRl(whole)}};
    CompactCandidate b{{ChainRl(even), ChainRl(odd)}};
    CHECK(candidate_subset(a, b));
    CHECK(candidate_subset(b, a));
  }
}

TEST_CASE("in_box agrees with pointwise sampling") {
  tg::Rng rng(541);
  long yes = 0, no = 0;
  for (int t = 0; t < 300; ++t) {
    SmythElem q = tg::random_elem_in(rng, Rat(0), Rat(1), 3);
    RlOpen u = tg::random_rlopen(rng, 3, 2);
    bool boxed = in_box(q, u);
    if (boxed) {
      ++yes;
      for (const auto& x : sample_points(q.rep(), 40)) CHECK(u.member(x));
      // the limit of every chain must carry its own interval
      for (const auto& blk : q.rep().blocks)
        if (const auto* ch = std::get_if<ChainRl>(&blk)) CHECK(u.member(ch->limit));
    } else {
      ++no;
      bool witness = false;
      for (const auto& x : sample_points(q.rep(), 120))
        if (!u.member(x)) witness = true;
      // either a sampled point escapes or a chain limit has no interval
      for (const auto& blk : q.rep().blocks)
        if (const auto* ch = std::get_if<ChainRl>(&blk))
          if (!u.member(ch->limit)) witness = true;
      CHECK(witness);
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}
