// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crescent/open_set.hpp"
#include "crescent/scalar.hpp"

namespace crescent {

// ---------------------------------------------------------------------------
// Points of the five spaces.
// ---------------------------------------------------------------------------

struct PosetPoint {
  std::string id;
  friend bool operator==(const PosetPoint&, const PosetPoint&) = default;
};
struct NatPoint {
  std::uint64_t n = 0;
  friend bool operator==(const NatPoint&, const NatPoint&) = default;
};
struct RatPoint {
  Rat x;
  friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

using Point = std::variant<PosetPoint, JPoint, NatPoint, RatPoint, SmythElem>;

inline std::string to_string(const Point& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PosetPoint>) return v.id;
        else if constexpr (std::is_same_v<T, JPoint>) return v.to_string();
        else if constexpr (std::is_same_v<T, NatPoint>) return std::to_string(v.n);
        else if constexpr (std::is_same_v<T, RatPoint>) return rat_to_string(v.x);
        else return std::string("<compact>");
      },
      p);
}

inline bool point_in_open(const Point& p, const OpenSet& u) {
  if (const auto* pp = std::get_if<PosetPoint>(&p)) {
    const auto& up = u.as<UpSetFin>();
    require(up.poset()->contains(pp->id), "variant-mismatch",
            "point '" + pp->id + "' is not in the open's poset");
    return up.contains(pp->id);
  }
  if (const auto* jp = std::get_if<JPoint>(&p)) return u.as<JOpen>().member(*jp);
  if (const auto* np = std::get_if<NatPoint>(&p)) return u.as<NcofOpen>().member(np->n);
  if (const auto* rp = std::get_if<RatPoint>(&p)) return u.as<RlOpen>().member(rp->x);
  return u.as<SmythOpen>().member(std::get<SmythElem>(p));
}

// ---------------------------------------------------------------------------
// Explicit valuation table on a finite poset: one exact value per upset.
// The working form of the Tix algorithms, and a Valuation variant of its own.
// ---------------------------------------------------------------------------

class ValuationTable {
public:
  ValuationTable(PosetPtr poset, std::map<std::uint32_t, Scalar> values,
                 std::size_t max_points = kDefaultMaxPosetPoints)
      : poset_(std::move(poset)), upsets_(all_upsets(poset_, max_points)) {
    for (const auto& u : upsets_) {
      auto it = values.find(u.mask());
      require(it != values.end(), "incomplete-table",
              "missing value for upset mask " + std::to_string(u.mask()));
      values_.push_back(it->second);
      index_[u.mask()] = values_.size() - 1;
    }
    require(values.size() == upsets_.size(), "incomplete-table",
            "table mentions masks that are not upsets");
  }

  static ValuationTable from_function(PosetPtr poset,
                                      const std::function<Scalar(const UpSetFin&)>& fn,
                                      std::size_t max_points = kDefaultMaxPosetPoints) {
    std::map<std::uint32_t, Scalar> values;
    for (const auto& u : all_upsets(poset, max_points)) values.emplace(u.mask(), fn(u));
    return ValuationTable(std::move(poset), std::move(values), max_points);
  }

  const PosetPtr& poset() const { return poset_; }
  const std::vector<UpSetFin>& upsets() const { return upsets_; }

  const Scalar& value_of_mask(std::uint32_t mask) const {
    auto it = index_.find(mask);
    require(it != index_.end(), "internal-invariant", "mask is not an upset of this table");
    return values_[it->second];
  }

  const Scalar& value(const UpSetFin& u) const {
    require(same_poset(u.poset(), poset_), "variant-mismatch", "upset of a different poset");
    return value_of_mask(u.mask());
  }

  const Scalar& value_at(std::size_t i) const { return values_[i]; }

private:
  PosetPtr poset_;
  std::vector<UpSetFin> upsets_;
  std::vector<Scalar> values_;
  std::map<std::uint32_t, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Valuations as a tagged union over evaluation strategies.
// ---------------------------------------------------------------------------

class Valuation;
using ValuationPtr = std::shared_ptr<const Valuation>;

struct ZeroVal {};
struct DiracVal {
  Point point;
};
struct SimpleVal {
  std::vector<std::pair<Scalar, Point>> terms;  // finite positive coefficients
};
struct DiscreteVal {
  std::vector<std::pair<Scalar, Point>> terms;
};
struct ConstOneVal {
  OpenKind space;  // mu on J, beta on N_cof, or the analogue elsewhere
};
struct IrredCharVal {
  ClosedSetFin c;
};
struct LebesgueVal {};
struct SmythLambdaVal {};
struct RestrictVal {
  ValuationPtr base;
  RingElement a;
};
struct LinCombVal {
  std::vector<std::pair<Scalar, ValuationPtr>> terms;  // finite coefficients
};
struct TableVal {
  ValuationTable table;
};

class Valuation {
public:
  using Rep = std::variant<ZeroVal, DiracVal, SimpleVal, DiscreteVal, ConstOneVal, IrredCharVal,
                           LebesgueVal, SmythLambdaVal, RestrictVal, LinCombVal, TableVal>;

  static Valuation zero() { return Valuation(ZeroVal{}); }
  static Valuation dirac(Point p) { return Valuation(DiracVal{std::move(p)}); }

  static Valuation simple(std::vector<std::pair<Scalar, Point>> terms) {
    check_terms(terms);
    return Valuation(SimpleVal{std::move(terms)});
  }

  static Valuation discrete(std::vector<std::pair<Scalar, Point>> terms) {
    check_terms(terms);
    return Valuation(DiscreteVal{std::move(terms)});
  }

  static Valuation const_one(OpenKind space) { return Valuation(ConstOneVal{space}); }
  static Valuation irred_char(ClosedSetFin c);
  static Valuation lebesgue() { return Valuation(LebesgueVal{}); }
  static Valuation smyth_lambda() { return Valuation(SmythLambdaVal{}); }

  static Valuation restriction(Valuation base, RingElement a) {
    return Valuation(RestrictVal{std::make_shared<Valuation>(std::move(base)), std::move(a)});
  }

  static Valuation lin_comb(std::vector<std::pair<Scalar, Valuation>> terms) {
    LinCombVal lc;
    for (auto& [c, v] : terms) {
      require(c.is_finite(), "invalid-valuation", "linear combination coefficients are finite");
      lc.terms.emplace_back(c, std::make_shared<Valuation>(std::move(v)));
    }
    return Valuation(LinCombVal{std::move(lc.terms)});
  }

  static Valuation table(ValuationTable t) { return Valuation(TableVal{std::move(t)}); }

  const Rep& rep() const { return rep_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&rep_);
  }

private:
  explicit Valuation(Rep rep) : rep_(std::move(rep)) {}

  static void check_terms(const std::vector<std::pair<Scalar, Point>>& terms) {
    for (const auto& [c, p] : terms)
      require(c.is_finite() && !c.is_zero(), "invalid-valuation",
              "point-mass coefficients must be finite and strictly positive");
  }

  Rep rep_;
};

/// Evaluates nu(U). Variant mismatches and unbounded restrictions raise.
inline Scalar eval(const Valuation& nu, const OpenSet& u) {
  struct Visitor {
    const OpenSet& u;

    Scalar operator()(const ZeroVal&) const { return Scalar(0); }
    Scalar operator()(const DiracVal& d) const {
      return point_in_open(d.point, u) ? Scalar(1) : Scalar(0);
    }
    Scalar operator()(const SimpleVal& s) const { return sum_terms(s.terms); }
    Scalar operator()(const DiscreteVal& s) const { return sum_terms(s.terms); }
    Scalar operator()(const ConstOneVal& c) const {
      require(c.space == u.kind(), "variant-mismatch", "constant-one valuation on a different space");
      return u.is_empty() ? Scalar(0) : Scalar(1);
    }
    Scalar operator()(const IrredCharVal& e) const {
      const auto& up = u.as<UpSetFin>();
      require(same_poset(up.poset(), e.c.poset()), "variant-mismatch",
              "characteristic valuation of a different poset");
      return (up.mask() & e.c.mask()) != 0 ? Scalar(1) : Scalar(0);
    }
    Scalar operator()(const LebesgueVal&) const { return lambda_eval(u.as<RlOpen>()); }
    Scalar operator()(const SmythLambdaVal&) const { return lambda_bar(u.as<SmythOpen>()); }
    Scalar operator()(const RestrictVal& r) const {
      Scalar total(0);
      for (const auto& cres : r.a.crescents()) {
        Scalar outer = eval(*r.base, open_intersect(u, cres.outer));
        require(outer.is_finite(), "unbounded-restriction",
                "restriction base is unbounded on a crescent");
        Scalar inner = eval(*r.base, open_intersect(u, cres.inner));
        total += outer - inner;
      }
      return total;
    }
    Scalar operator()(const LinCombVal& lc) const {
      Scalar total(0);
      for (const auto& [c, v] : lc.terms) total += c * eval(*v, u);
      return total;
    }
    Scalar operator()(const TableVal& t) const { return t.table.value(u.as<UpSetFin>()); }

    Scalar sum_terms(const std::vector<std::pair<Scalar, Point>>& terms) const {
      Scalar total(0);
      for (const auto& [c, p] : terms)
        if (point_in_open(p, u)) total += c;
      return total;
    }
  };
  return std::visit(Visitor{u}, nu.rep());
}

/// Evaluation capability: the interface the decomposition algorithms consume,
/// so black boxes and test doubles plug in beside Valuation nodes.
using ValuationFn = std::function<Scalar(const OpenSet&)>;

inline ValuationFn as_fn(Valuation nu) {
  auto held = std::make_shared<Valuation>(std::move(nu));
  return [held](const OpenSet& u) { return eval(*held, u); };
}

// ---------------------------------------------------------------------------
// Axiom checking and the stochastic order, probe-based.
// ---------------------------------------------------------------------------

struct AxiomsPass {};
struct AxiomsFail {
  enum class Kind { strictness, monotonicity, modularity } kind;
  OpenSet u, v;

  std::string kind_name() const {
    switch (kind) {
      case Kind::strictness: return "strictness";
      case Kind::monotonicity: return "monotonicity";
      case Kind::modularity: return "modularity";
    }
    return "?";
  }
};
using AxiomVerdict = std::variant<AxiomsPass, AxiomsFail>;

/// Pass iff nu is strict, monotone and modular on the closure of the probes
/// under pairwise union/intersection. Fail carries the first violating pair in
/// canonical order.
inline AxiomVerdict check_axioms(const ValuationFn& nu, const ProbeSet& probes) {
  ProbeSet closed = close_probes(probes);
  const auto& fam = closed.opens();
  OpenSet empty = empty_like(fam.front());
  if (nu(empty) != Scalar(0)) return AxiomsFail{AxiomsFail::Kind::strictness, empty, empty};
  std::vector<Scalar> vals;
  vals.reserve(fam.size());
  for (const auto& u : fam) vals.push_back(nu(u));
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      if (open_subset(fam[i], fam[j]) && !(vals[i] <= vals[j]))
        return AxiomsFail{AxiomsFail::Kind::monotonicity, fam[i], fam[j]};
      if (open_subset(fam[j], fam[i]) && !(vals[j] <= vals[i]))
        return AxiomsFail{AxiomsFail::Kind::monotonicity, fam[j], fam[i]};
    }
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      Scalar lhs = vals[i] + vals[j];
      Scalar rhs = nu(open_union(fam[i], fam[j])) + nu(open_intersect(fam[i], fam[j]));
      if (lhs != rhs) return AxiomsFail{AxiomsFail::Kind::modularity, fam[i], fam[j]};
    }
  return AxiomsPass{};
}

inline AxiomVerdict check_axioms(const Valuation& nu, const ProbeSet& probes) {
  return check_axioms(as_fn(nu), probes);
}

/// On a finite poset the probe set defaults to all upsets, making the check a
/// complete decision rather than a refuter.
inline AxiomVerdict check_axioms_on_poset(const Valuation& nu, const PosetPtr& poset,
                                          std::size_t max_points = kDefaultMaxPosetPoints) {
  std::vector<OpenSet> probes;
  for (const auto& u : all_upsets(poset, max_points)) probes.emplace_back(u);
  return check_axioms(as_fn(nu), ProbeSet(std::move(probes)));
}

struct NoCounterexample {};
struct StochasticCounterexample {
  OpenSet u;
  Scalar lhs, rhs;
};
using StochasticVerdict = std::variant<NoCounterexample, StochasticCounterexample>;

/// Sound refuter for nu1 <= nu2 in the stochastic order: reports the first
/// probe (canonical order) where nu1 exceeds nu2.
inline StochasticVerdict stochastic_leq_probe(const ValuationFn& nu1, const ValuationFn& nu2,
                                              const ProbeSet& probes) {
  std::vector<OpenSet> fam = probes.opens();
  std::sort(fam.begin(), fam.end(), open_less);
  for (const auto& u : fam) {
    Scalar a = nu1(u), b = nu2(u);
    if (!(a <= b)) return StochasticCounterexample{u, a, b};
  }
  return NoCounterexample{};
}

inline StochasticVerdict stochastic_leq_probe(const Valuation& nu1, const Valuation& nu2,
                                              const ProbeSet& probes) {
  return stochastic_leq_probe(as_fn(nu1), as_fn(nu2), probes);
}

// ---------------------------------------------------------------------------
// Set expressions and the crescent normal form.
// ---------------------------------------------------------------------------

class SetExpr {
public:
  static SetExpr leaf(OpenSet u) {
    SetExpr e;
    e.root_ = std::make_shared<Node>(Node{Op::leaf, std::move(u), {}});
    return e;
  }

  friend SetExpr expr_union(SetExpr a, SetExpr b) { return combine(Op::union_, a, b); }
  friend SetExpr expr_intersect(SetExpr a, SetExpr b) { return combine(Op::inter, a, b); }
  friend SetExpr expr_diff(SetExpr a, SetExpr b) { return combine(Op::diff, a, b); }

  std::vector<OpenSet> leaves() const {
    std::vector<OpenSet> out;
    collect(root_, out);
    return out;
  }

  /// Boolean value of the expression on a cell where exactly the leaves in
  /// `membership` contain the point.
  bool truth(const std::vector<bool>& membership) const {
    std::size_t next = 0;
    return truth(root_, membership, next);
  }

private:
  enum class Op { leaf, union_, inter, diff };
  struct Node {
    Op op;
    std::optional<OpenSet> open;
    std::vector<std::shared_ptr<const Node>> kids;
  };

  static SetExpr combine(Op op, const SetExpr& a, const SetExpr& b) {
    SetExpr e;
    e.root_ = std::make_shared<Node>(Node{op, std::nullopt, {a.root_, b.root_}});
    return e;
  }

  static void collect(const std::shared_ptr<const Node>& n, std::vector<OpenSet>& out) {
    if (n->op == Op::leaf) {
      out.push_back(*n->open);
      return;
    }
    for (const auto& k : n->kids) collect(k, out);
  }

  static bool truth(const std::shared_ptr<const Node>& n, const std::vector<bool>& m,
                    std::size_t& next) {
    switch (n->op) {
      case Op::leaf: return m[next++];
      case Op::union_: {
        bool a = truth(n->kids[0], m, next);
        bool b = truth(n->kids[1], m, next);
        return a || b;
      }
      case Op::inter: {
        bool a = truth(n->kids[0], m, next);
        bool b = truth(n->kids[1], m, next);
        return a && b;
      }
      case Op::diff: {
        bool a = truth(n->kids[0], m, next);
        bool b = truth(n->kids[1], m, next);
        return a && !b;
      }
    }
    fail("internal-invariant", "unhandled expression node");
  }

  std::shared_ptr<const Node> root_;
};

inline constexpr std::size_t kMaxExprLeaves = 12;

/// Crescent normal form of a set expression: one crescent per nonempty cell of
/// the Venn decomposition of the leaves on which the expression holds. Cells
/// are pairwise disjoint by construction; the result is canonically sorted.
inline RingElement to_ring_element(const SetExpr& expr) {
  std::vector<OpenSet> leaves = expr.leaves();
  require(!leaves.empty(), "invalid-expression", "expression has no leaves");
  OpenKind kind = leaves.front().kind();
  require(kind != OpenKind::smyth, "unsupported-variant",
          "box combinations do not support exact set difference");
  for (const auto& l : leaves) detail::check_same_kind(leaves.front(), l, "set expression");
  require(leaves.size() <= kMaxExprLeaves, "size-limit-exceeded",
          "expression has more than " + std::to_string(kMaxExprLeaves) + " leaves");
  std::vector<Crescent> crescents;
  for (std::uint32_t cell = 1; cell < (1u << leaves.size()); ++cell) {
    std::vector<bool> membership(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) membership[i] = (cell >> i) & 1u;
    if (!expr.truth(membership)) continue;
    std::optional<OpenSet> outer;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (membership[i]) outer = outer ? open_intersect(*outer, leaves[i]) : leaves[i];
    if (outer->is_empty()) continue;
    OpenSet rest = empty_like(*outer);
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (!membership[i]) rest = open_union(rest, leaves[i]);
    OpenSet inner = open_intersect(*outer, rest);
    if (open_subset(*outer, inner)) continue;  // empty crescent
    crescents.emplace_back(*outer, inner);
  }
  return RingElement(std::move(crescents));
}

/// The restriction valuation nu_A of the ring machinery (bounded base).
inline Valuation restrict(Valuation nu, RingElement a) {
  return Valuation::restriction(std::move(nu), std::move(a));
}

/// Mass of nu on a certified singleton crescent {a} = U \ V: nu(U) - nu(V).
inline Scalar atom_at(const ValuationFn& nu, const Crescent& uv) {
  Scalar outer = nu(uv.outer);
  require(outer.is_finite(), "unbounded-restriction", "valuation unbounded on the outer open");
  Scalar inner = nu(uv.inner);
  return outer - inner;
}

inline Scalar atom_at(const Valuation& nu, const Crescent& uv) { return atom_at(as_fn(nu), uv); }

inline Valuation Valuation::irred_char(ClosedSetFin c) {
  require(is_irreducible(c.poset(), c), "not-irreducible",
          "characteristic valuations require an irreducible closed set");
  return Valuation(IrredCharVal{std::move(c)});
}

} // namespace crescent
