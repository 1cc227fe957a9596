// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crescent/compact_candidate.hpp"
#include "crescent/countable_open.hpp"
#include "crescent/error.hpp"
#include "crescent/johnstone.hpp"
#include "crescent/johnstone_space.hpp"
#include "crescent/open_set.hpp"
#include "crescent/poset.hpp"
#include "crescent/scalar.hpp"
#include "crescent/smyth.hpp"
#include "crescent/sorgenfrey.hpp"
#include "crescent/valuation.hpp"

namespace crescent {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings (or JSON integers), never as floats.

inline Json rat_to_json(const Rat& x) { return rat_to_string(x); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
  require(j.is_string(), "parse-error", "rational must be \"p/q\" or an integer: " + j.dump());
  return parse_rat(j.get<std::string>());
}

inline Json scalar_to_json(const Scalar& s) { return s.to_string(); }

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(Rat(static_cast<long long>(j.get<long long>())));
  require(j.is_string(), "parse-error", "scalar must be \"p/q\", \"inf\" or an integer");
  return Scalar::from_string(j.get<std::string>());
}

// ---------------------------------------------------------------------------
// Posets and their subsets.
// ---------------------------------------------------------------------------

inline Json poset_to_json(const FinitePoset& p) {
  Json leq = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (i != j && p.leq(i, j)) leq.push_back({p.id(i), p.id(j)});
  return Json{{"points", p.ids()}, {"leq", leq}};
}

inline PosetPtr poset_from_json(const Json& j) {
  require(j.contains("points"), "parse-error", "poset needs a 'points' array");
  std::vector<std::string> ids = j.at("points").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("leq"))
    for (const auto& e : j.at("leq"))
      pairs.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  return std::make_shared<FinitePoset>(FinitePoset::from_generators(std::move(ids), pairs));
}

inline Json upset_to_json(const UpSetFin& u) {
  return Json{{"poset", poset_to_json(*u.poset())}, {"carrier", u.carrier()}};
}

inline Json closed_to_json(const ClosedSetFin& c) {
  return Json{{"poset", poset_to_json(*c.poset())}, {"carrier", c.carrier()}};
}

inline UpSetFin upset_from_json(const Json& j, PosetPtr poset = nullptr) {
  if (!poset) poset = poset_from_json(j.at("poset"));
  return UpSetFin(poset, j.at("carrier").get<std::vector<std::string>>());
}

inline ClosedSetFin closed_from_json(const Json& j, PosetPtr poset = nullptr) {
  if (!poset) poset = poset_from_json(j.at("poset"));
  return ClosedSetFin(poset, j.at("carrier").get<std::vector<std::string>>());
}

// ---------------------------------------------------------------------------
// Opens of the individual spaces.
// ---------------------------------------------------------------------------

inline Json ncof_to_json(const NcofOpen& u) {
  if (u.is_empty()) return Json{{"empty", true}};
  return Json{{"excluded", u.excluded()}};
}

inline NcofOpen ncof_from_json(const Json& j) {
  if (j.contains("empty") && j.at("empty").get<bool>()) return NcofOpen::empty();
  require(j.contains("excluded"), "parse-error", "N_cof open needs 'empty' or 'excluded'");
  return NcofOpen::cofinite(j.at("excluded").get<std::vector<std::uint64_t>>());
}

inline Json jthresh_to_json(const JOpen::Thresh& t) {
  return t ? Json(*t) : Json("x");
}

inline JOpen::Thresh jthresh_from_json(const Json& j) {
  if (j.is_string()) {
    require(j.get<std::string>() == "x", "parse-error", "threshold must be a natural or \"x\"");
    return std::nullopt;
  }
  return j.get<std::uint32_t>();
}

inline Json jopen_to_json(const JOpen& u) {
  Json ov = Json::array();
  for (const auto& [c, t] : u.overrides()) ov.push_back({c, jthresh_to_json(t)});
  return Json{{"overrides", ov}, {"cutoff", u.cutoff()}, {"tail", jthresh_to_json(u.tail())}};
}

inline JOpen jopen_from_json(const Json& j) {
  std::map<std::uint32_t, JOpen::Thresh> ov;
  if (j.contains("overrides"))
    for (const auto& e : j.at("overrides"))
      ov[e.at(0).get<std::uint32_t>()] = jthresh_from_json(e.at(1));
  return JOpen::make(std::move(ov), jthresh_from_json(j.at("tail")));
}

inline Json jpoint_to_json(const JPoint& p) {
  return Json::array({p.column, p.maximal() ? Json("w") : Json(*p.height)});
}

inline JPoint jpoint_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2, "parse-error", "J point is [column, height|\"w\"]");
  std::uint32_t col = j.at(0).get<std::uint32_t>();
  if (j.at(1).is_string()) {
    require(j.at(1).get<std::string>() == "w", "parse-error", "height must be natural or \"w\"");
    return jpoint_max(col);
  }
  return jpoint(col, j.at(1).get<std::uint32_t>());
}

inline Json rlopen_to_json(const RlOpen& u) {
  Json out = Json::array();
  for (const auto& iv : u.intervals()) out.push_back({rat_to_json(iv.a), rat_to_json(iv.b)});
  return out;
}

inline RlOpen rlopen_from_json(const Json& j) {
  require(j.is_array(), "parse-error", "Rl open is [[a,b],...]");
  std::vector<RlInterval> ivs;
  for (const auto& e : j) {
    require(e.is_array() && e.size() == 2, "parse-error", "interval is [a,b]");
    ivs.push_back({rat_from_json(e.at(0)), rat_from_json(e.at(1))});
  }
  return RlOpen::normalize(std::move(ivs));
}

inline Json smyth_open_to_json(const SmythOpen& u) {
  Json boxes = Json::array();
  for (const auto& b : u.boxes()) boxes.push_back(rlopen_to_json(b));
  return Json{{"boxes", boxes}};
}

inline SmythOpen smyth_open_from_json(const Json& j) {
  std::vector<RlOpen> boxes;
  for (const auto& e : j.at("boxes")) boxes.push_back(rlopen_from_json(e));
  return SmythOpen::of_boxes(std::move(boxes));
}

inline Json open_to_json(const OpenSet& u) {
  switch (u.kind()) {
    case OpenKind::fin_up: {
      Json j = upset_to_json(u.as<UpSetFin>());
      j["kind"] = "finup";
      return j;
    }
    case OpenKind::johnstone: {
      Json j = jopen_to_json(u.as<JOpen>());
      j["kind"] = "j";
      return j;
    }
    case OpenKind::ncof: {
      Json j = ncof_to_json(u.as<NcofOpen>());
      j["kind"] = "ncof";
      return j;
    }
    case OpenKind::rl:
      return Json{{"kind", "rl"}, {"intervals", rlopen_to_json(u.as<RlOpen>())}};
    case OpenKind::smyth: {
      Json j = smyth_open_to_json(u.as<SmythOpen>());
      j["kind"] = "smyth";
      return j;
    }
  }
  fail("internal-invariant", "unhandled open kind");
}

inline OpenSet open_from_json(const Json& j, PosetPtr poset = nullptr) {
  require(j.contains("kind"), "parse-error", "open set needs a 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "finup") return OpenSet(upset_from_json(j, std::move(poset)));
  if (kind == "j") return OpenSet(jopen_from_json(j));
  if (kind == "ncof") return OpenSet(ncof_from_json(j));
  if (kind == "rl") return OpenSet(rlopen_from_json(j.at("intervals")));
  if (kind == "smyth") return OpenSet(smyth_open_from_json(j));
  fail("parse-error", "unknown open kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Chains, candidates, countable opens.
// ---------------------------------------------------------------------------

inline Json chain_to_json(const ChainRl& c) {
  Json prefix = Json::array();
  for (const auto& x : c.prefix) prefix.push_back(rat_to_json(x));
  return Json{{"limit", rat_to_json(c.limit)},   {"c", rat_to_json(c.coeff)},
              {"q", rat_to_json(c.ratio)},       {"dir", c.descending() ? "desc" : "asc"},
              {"include_limit", c.include_limit}, {"prefix", prefix}};
}

inline ChainRl chain_from_json(const Json& j) {
  ChainRl c;
  c.limit = rat_from_json(j.at("limit"));
  c.coeff = rat_from_json(j.at("c"));
  c.ratio = rat_from_json(j.at("q"));
  std::string dir = j.value("dir", "desc");
  require(dir == "desc" || dir == "asc", "parse-error", "dir must be \"desc\" or \"asc\"");
  c.dir = dir == "desc" ? ChainRl::Direction::descending : ChainRl::Direction::ascending;
  c.include_limit = j.value("include_limit", false);
  if (j.contains("prefix"))
    for (const auto& e : j.at("prefix")) c.prefix.push_back(rat_from_json(e));
  std::sort(c.prefix.begin(), c.prefix.end());
  c.validate();
  return c;
}

inline Json candidate_to_json(const CompactCandidate& cand) {
  Json blocks = Json::array();
  for (const auto& b : cand.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&b)) {
      Json pts = Json::array();
      for (const auto& x : fb->points) pts.push_back(rat_to_json(x));
      blocks.push_back(Json{{"finite", pts}});
    } else {
      blocks.push_back(Json{{"chain", chain_to_json(std::get<ChainRl>(b))}});
    }
  }
  return Json{{"blocks", blocks}};
}

inline CompactCandidate candidate_from_json(const Json& j) {
  CompactCandidate cand;
  for (const auto& e : j.at("blocks")) {
    if (e.contains("finite")) {
      FiniteBlock fb;
      for (const auto& x : e.at("finite")) fb.points.push_back(rat_from_json(x));
      std::sort(fb.points.begin(), fb.points.end());
      fb.points.erase(std::unique(fb.points.begin(), fb.points.end()), fb.points.end());
      cand.blocks.emplace_back(std::move(fb));
    } else if (e.contains("chain")) {
      cand.blocks.emplace_back(chain_from_json(e.at("chain")));
    } else {
      fail("parse-error", "block needs 'finite' or 'chain'");
    }
  }
  cand.validate();
  return cand;
}

inline Json countable_to_json(const CountableRlOpen& v) {
  Json tails = Json::array();
  for (const auto& t : v.tails)
    tails.push_back(Json{{"chain", chain_to_json(t.chain)},
                         {"start", t.start_index},
                         {"s", rat_to_json(t.s)}});
  return Json{{"finite", rlopen_to_json(v.finite_part)}, {"tails", tails}};
}

inline CountableRlOpen countable_from_json(const Json& j) {
  CountableRlOpen v;
  v.finite_part = rlopen_from_json(j.at("finite"));
  for (const auto& e : j.at("tails")) {
    TailFamily t{chain_from_json(e.at("chain")), e.at("start").get<std::uint32_t>(),
                 rat_from_json(e.at("s"))};
    v.tails.push_back(std::move(t));
  }
  v.validate();
  return v;
}

// ---------------------------------------------------------------------------
// Points, crescents, ring elements, valuations.
// ---------------------------------------------------------------------------

inline Json point_to_json(const Point& p) {
  struct Visitor {
    Json operator()(const PosetPoint& v) const { return Json{{"kind", "poset"}, {"id", v.id}}; }
    Json operator()(const JPoint& v) const {
      return Json{{"kind", "j"}, {"point", jpoint_to_json(v)}};
    }
    Json operator()(const NatPoint& v) const { return Json{{"kind", "nat"}, {"n", v.n}}; }
    Json operator()(const RatPoint& v) const {
      return Json{{"kind", "rat"}, {"x", rat_to_json(v.x)}};
    }
    Json operator()(const SmythElem& v) const {
      return Json{{"kind", "smyth"}, {"elem", candidate_to_json(v.rep())}};
    }
  };
  return std::visit(Visitor{}, p);
}

inline Point point_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "poset") return PosetPoint{j.at("id").get<std::string>()};
  if (kind == "j") return jpoint_from_json(j.at("point"));
  if (kind == "nat") return NatPoint{j.at("n").get<std::uint64_t>()};
  if (kind == "rat") return RatPoint{rat_from_json(j.at("x"))};
  if (kind == "smyth") return SmythElem(candidate_from_json(j.at("elem")));
  fail("parse-error", "unknown point kind '" + kind + "'");
}

inline Json crescent_to_json(const Crescent& c) {
  return Json{{"outer", open_to_json(c.outer)}, {"inner", open_to_json(c.inner)}};
}

inline Crescent crescent_from_json(const Json& j, PosetPtr poset = nullptr) {
  return Crescent(open_from_json(j.at("outer"), poset), open_from_json(j.at("inner"), poset));
}

inline Json ring_to_json(const RingElement& r) {
  Json cres = Json::array();
  for (const auto& c : r.crescents()) cres.push_back(crescent_to_json(c));
  return Json{{"crescents", cres}};
}

inline RingElement ring_from_json(const Json& j, PosetPtr poset = nullptr) {
  std::vector<Crescent> cres;
  for (const auto& e : j.at("crescents")) cres.push_back(crescent_from_json(e, poset));
  return RingElement(std::move(cres));
}

inline Json table_to_json(const ValuationTable& t) {
  Json entries = Json::array();
  for (const auto& u : t.upsets()) entries.push_back({u.carrier(), scalar_to_json(t.value(u))});
  return Json{{"poset", poset_to_json(*t.poset())}, {"entries", entries}};
}

inline ValuationTable table_from_json(const Json& j, PosetPtr poset = nullptr) {
  if (!poset) poset = poset_from_json(j.at("poset"));
  std::map<std::uint32_t, Scalar> values;
  for (const auto& e : j.at("entries")) {
    UpSetFin u(poset, e.at(0).get<std::vector<std::string>>());
    values.emplace(u.mask(), scalar_from_json(e.at(1)));
  }
  return ValuationTable(poset, std::move(values), poset->size());
}

inline std::string open_kind_to_string(OpenKind k) { return to_string(k); }

inline OpenKind open_kind_from_string(const std::string& s) {
  if (s == "finup") return OpenKind::fin_up;
  if (s == "j") return OpenKind::johnstone;
  if (s == "ncof") return OpenKind::ncof;
  if (s == "rl") return OpenKind::rl;
  if (s == "smyth") return OpenKind::smyth;
  fail("parse-error", "unknown space kind '" + s + "'");
}

inline Json valuation_to_json(const Valuation& nu) {
  struct Visitor {
    Json operator()(const ZeroVal&) const { return Json{{"tag", "zero"}}; }
    Json operator()(const DiracVal& v) const {
      return Json{{"tag", "dirac"}, {"point", point_to_json(v.point)}};
    }
    Json operator()(const SimpleVal& v) const { return terms("simple", v.terms); }
    Json operator()(const DiscreteVal& v) const { return terms("discrete", v.terms); }
    Json operator()(const ConstOneVal& v) const {
      return Json{{"tag", "const-one"}, {"space", open_kind_to_string(v.space)}};
    }
    Json operator()(const IrredCharVal& v) const {
      return Json{{"tag", "irred-char"}, {"closed", closed_to_json(v.c)}};
    }
    Json operator()(const LebesgueVal&) const { return Json{{"tag", "lebesgue"}}; }
    Json operator()(const SmythLambdaVal&) const { return Json{{"tag", "smyth-lambda"}}; }
    Json operator()(const RestrictVal& v) const {
      return Json{{"tag", "restrict"},
                  {"base", valuation_to_json(*v.base)},
                  {"ring", ring_to_json(v.a)}};
    }
    Json operator()(const LinCombVal& v) const {
      Json ts = Json::array();
      for (const auto& [c, w] : v.terms)
        ts.push_back({scalar_to_json(c), valuation_to_json(*w)});
      return Json{{"tag", "lin-comb"}, {"terms", ts}};
    }
    Json operator()(const TableVal& v) const {
      return Json{{"tag", "table"}, {"table", table_to_json(v.table)}};
    }

    static Json terms(const char* tag, const std::vector<std::pair<Scalar, Point>>& ts) {
      Json arr = Json::array();
      for (const auto& [c, p] : ts) arr.push_back({scalar_to_json(c), point_to_json(p)});
      return Json{{"tag", tag}, {"terms", arr}};
    }
  };
  return std::visit(Visitor{}, nu.rep());
}

inline Valuation valuation_from_json(const Json& j, PosetPtr poset = nullptr) {
  std::string tag = j.at("tag").get<std::string>();
  auto parse_terms = [&](const Json& arr) {
    std::vector<std::pair<Scalar, Point>> ts;
    for (const auto& e : arr) ts.emplace_back(scalar_from_json(e.at(0)), point_from_json(e.at(1)));
    return ts;
  };
  if (tag == "zero") return Valuation::zero();
  if (tag == "dirac") return Valuation::dirac(point_from_json(j.at("point")));
  if (tag == "simple") return Valuation::simple(parse_terms(j.at("terms")));
  if (tag == "discrete") return Valuation::discrete(parse_terms(j.at("terms")));
  if (tag == "const-one")
    return Valuation::const_one(open_kind_from_string(j.at("space").get<std::string>()));
  if (tag == "irred-char") return Valuation::irred_char(closed_from_json(j.at("closed"), poset));
  if (tag == "lebesgue") return Valuation::lebesgue();
  if (tag == "smyth-lambda") return Valuation::smyth_lambda();
  if (tag == "restrict")
    return Valuation::restriction(valuation_from_json(j.at("base"), poset),
                                  ring_from_json(j.at("ring"), poset));
  if (tag == "lin-comb") {
    std::vector<std::pair<Scalar, Valuation>> ts;
    for (const auto& e : j.at("terms"))
      ts.emplace_back(scalar_from_json(e.at(0)), valuation_from_json(e.at(1), poset));
    return Valuation::lin_comb(std::move(ts));
  }
  if (tag == "table") return Valuation::table(table_from_json(j.at("table"), poset));
  fail("parse-error", "unknown valuation tag '" + tag + "'");
}

// ---------------------------------------------------------------------------
// Set expressions (for ring-normalize): {"op": ..., "args": [...]} over opens.
// ---------------------------------------------------------------------------

inline SetExpr expr_from_json(const Json& j, PosetPtr poset = nullptr) {
  if (!j.contains("op")) return SetExpr::leaf(open_from_json(j, poset));
  std::string op = j.at("op").get<std::string>();
  const Json& args = j.at("args");
  require(args.is_array() && args.size() >= 1, "parse-error", "expression needs args");
  SetExpr acc = expr_from_json(args.at(0), poset);
  for (std::size_t i = 1; i < args.size(); ++i) {
    SetExpr rhs = expr_from_json(args.at(i), poset);
    if (op == "union") acc = expr_union(acc, rhs);
    else if (op == "inter") acc = expr_intersect(acc, rhs);
    else if (op == "diff") acc = expr_diff(acc, rhs);
    else fail("parse-error", "unknown op '" + op + "'");
  }
  if (op == "diff") require(args.size() == 2, "parse-error", "diff takes exactly two args");
  return acc;
}

// ---------------------------------------------------------------------------
// Discrete valuations on J (plain pairs), decompositions and certificates.
// ---------------------------------------------------------------------------

inline Json jdiscrete_to_json(const JDiscrete& d) {
  Json arr = Json::array();
  for (const auto& [p, c] : d) arr.push_back({jpoint_to_json(p), scalar_to_json(c)});
  return arr;
}

inline JDiscrete jdiscrete_from_json(const Json& j) {
  JDiscrete out;
  for (const auto& e : j) out.emplace_back(jpoint_from_json(e.at(0)), scalar_from_json(e.at(1)));
  return out;
}

inline Json pc_certificate_to_json(const PCRefutationCertificate& cert) {
  Json elems = Json::array();
  for (const auto& q : cert.elements) elems.push_back(candidate_to_json(q.rep()));
  Json proofs = Json::array();
  for (const auto& p : cert.containments) proofs.push_back(Json{{"tails", p.tail_refs}});
  return Json{{"u", rlopen_to_json(cert.u)},
              {"r", scalar_to_json(cert.r)},
              {"elements", elems},
              {"v", countable_to_json(cert.v)},
              {"bound", scalar_to_json(cert.bound)},
              {"containments", proofs}};
}

inline Json consonance_certificate_to_json(const ConsonanceCertificate& cert) {
  return Json{{"q", candidate_to_json(cert.q.rep())},
              {"r", scalar_to_json(cert.r)},
              {"v", countable_to_json(cert.v)},
              {"bound", scalar_to_json(cert.bound)}};
}

inline Json compact_verdict_to_json(const CompactVerdict& v) {
  if (std::holds_alternative<CompactOk>(v)) return Json{{"verdict", "compact"}};
  if (const auto* mi = std::get_if<MissingInfimum>(&v))
    return Json{{"verdict", "not-compact"},
                {"reason", "missing-infimum"},
                {"chain", chain_to_json(mi->chain)},
                {"infimum", rat_to_json(mi->infimum)}};
  const auto& ac = std::get<AscendingCover>(v);
  Json pieces = Json::array();
  pieces.push_back("]-inf," + rat_to_string(ac.first) + "[");
  for (std::uint32_t n = 0; n < 4; ++n) {
    RlInterval piece = ac.piece(n);
    pieces.push_back("[" + rat_to_string(piece.a) + "," + rat_to_string(piece.b) + "[");
  }
  pieces.push_back("...");
  pieces.push_back("[" + rat_to_string(ac.sup) + ",+inf[");
  return Json{{"verdict", "not-compact"},
              {"reason", "ascending-chain"},
              {"chain", chain_to_json(ac.chain)},
              {"cover",
               Json{{"initial", pieces.at(0)},
                    {"steps", "[r_n, r_{n+1}[ with r_n = limit - c*q^n"},
                    {"final", pieces.back()},
                    {"first_pieces", pieces}}}};
}

} // namespace crescent
