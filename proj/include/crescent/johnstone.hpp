// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "crescent/johnstone_space.hpp"
#include "crescent/ncof.hpp"
#include "crescent/open_set.hpp"
#include "crescent/scalar.hpp"
#include "crescent/valuation.hpp"

namespace crescent {

/// The certified singleton crescent around a finite-height point a at level n:
/// ({a} u upL_{n+1}) \ upL_{n+1}.
inline Crescent singleton_crescent_j(const JPoint& a) {
  require(!a.maximal(), "maximal-point-input",
          "maximal singletons are not crescents of Scott opens");
  std::uint32_t m = *a.height;
  // outer = upL_{m+1} except that a's column already starts at height m
  std::map<std::uint32_t, JOpen::Thresh> ov;
  ov[a.column] = m;
  JOpen outer = JOpen::make(std::move(ov), m + 1);
  return Crescent(OpenSet(outer), OpenSet(j_up_level(m + 1)));
}

// ---------------------------------------------------------------------------
// Decomposition nu = alpha + r * beta on N_cof.
// ---------------------------------------------------------------------------

struct NcofDecomposition {
  std::vector<std::pair<std::uint64_t, Scalar>> alpha;  // strictly positive atoms
  Scalar r;

  Scalar alpha_at(std::uint64_t i) const {
    for (const auto& [n, c] : alpha)
      if (n == i) return c;
    return Scalar(0);
  }
};

namespace detail {
inline std::vector<OpenSet> ncof_probe_family(const std::vector<std::uint64_t>& support) {
  std::vector<OpenSet> probes;
  probes.emplace_back(NcofOpen::empty());
  require(support.size() <= 16, "size-limit-exceeded", "support hint too large to enumerate");
  for (std::uint32_t sub = 0; sub < (1u << support.size()); ++sub) {
    std::vector<std::uint64_t> excl;
    for (std::size_t i = 0; i < support.size(); ++i)
      if ((sub >> i) & 1u) excl.push_back(support[i]);
    probes.emplace_back(NcofOpen::cofinite(std::move(excl)));
  }
  std::uint64_t fresh = 0;
  for (auto n : support) fresh = std::max(fresh, n + 1);
  std::vector<std::uint64_t> extra;
  for (int t = 0; t < 8; ++t) {
    extra.push_back(fresh + t);
    std::vector<std::uint64_t> excl = extra;
    probes.emplace_back(NcofOpen::cofinite(std::move(excl)));
  }
  return probes;
}
} // namespace detail

/// Recovers the discrete part and the beta coefficient of a bounded black-box
/// valuation on N_cof of the form alpha + r*beta with supp(alpha) inside the
/// hint. Atoms come from the closed-singleton crescents N \ (N minus {i});
/// the result is verified exactly on the hint-generated probe family.
inline NcofDecomposition decompose_ncof(const ValuationFn& nu,
                                        std::vector<std::uint64_t> support_hint) {
  std::sort(support_hint.begin(), support_hint.end());
  support_hint.erase(std::unique(support_hint.begin(), support_hint.end()), support_hint.end());
  auto probes = detail::ncof_probe_family(support_hint);
  // Axiom sanity on a small closed subfamily: the powerset of the first few
  // hint points (closed under union/intersection, so quadratic work stays
  // bounded). The exact alpha + r*beta verification below sweeps the full
  // hint-generated family including fresh opens.
  std::size_t head = std::min<std::size_t>(support_hint.size(), 5);
  std::vector<OpenSet> axiom_probes;
  axiom_probes.emplace_back(NcofOpen::empty());
  for (std::uint32_t sub = 0; sub < (1u << head); ++sub) {
    std::vector<std::uint64_t> excl;
    for (std::size_t i = 0; i < head; ++i)
      if ((sub >> i) & 1u) excl.push_back(support_hint[i]);
    axiom_probes.emplace_back(NcofOpen::cofinite(std::move(excl)));
  }
  if (auto verdict = check_axioms(nu, ProbeSet(axiom_probes));
      const auto* f = std::get_if<AxiomsFail>(&verdict))
    fail("verification-failed",
         "input violates " + f->kind_name() + " at " + f->u.to_string() + " / " + f->v.to_string());

  OpenSet full{NcofOpen::full()};
  NcofDecomposition out;
  out.r = Scalar(0);
  for (auto i : support_hint) {
    Crescent singleton(full, OpenSet(NcofOpen::cofinite({i})));
    Scalar a = atom_at(nu, singleton);
    if (!a.is_zero()) out.alpha.emplace_back(i, a);
  }
  out.r = nu(OpenSet(NcofOpen::cofinite(support_hint)));

  for (const auto& u : probes) {
    const auto& w = u.as<NcofOpen>();
    Scalar expect(0);
    for (const auto& [i, c] : out.alpha)
      if (w.member(i)) expect += c;
    if (!w.is_empty()) expect += out.r;
    if (nu(u) != expect)
      fail("verification-failed", "support hint too small or input is not alpha + r*beta; "
                                  "mismatch at " + w.to_string());
  }
  return out;
}

// ---------------------------------------------------------------------------
// nu* and the decomposition nu = theta + r * mu on J.
// ---------------------------------------------------------------------------

/// Evaluation capability for nu*(U) = nu(U) - sum of the finite-height atoms
/// inside U. Exact for inputs of the theta + r*mu class whose finite-height
/// support lies in the hint; a violated contract surfaces as
/// negative-intermediate.
inline ValuationFn nu_star(const ValuationFn& nu, const std::vector<JPoint>& support_hint) {
  auto atoms = std::make_shared<std::vector<std::pair<JPoint, Scalar>>>();
  for (const auto& a : support_hint) {
    require(!a.maximal(), "maximal-point-input", "nu* subtracts finite-height atoms only");
    Scalar mass = atom_at(nu, singleton_crescent_j(a));
    if (!mass.is_zero()) atoms->emplace_back(a, mass);
  }
  return [nu, atoms](const OpenSet& u) -> Scalar {
    Scalar total = nu(u);
    Scalar sub(0);
    for (const auto& [a, c] : *atoms)
      if (u.as<JOpen>().member(a)) sub += c;
    require(sub <= total, "negative-intermediate",
            "atom sum exceeds the valuation; the declared-support contract is violated");
    return total - sub;
  };
}

struct JohnstoneDecomposition {
  std::vector<std::pair<JPoint, Scalar>> theta;  // strictly positive atoms
  Scalar r;

  Scalar theta_at(const JPoint& p) const {
    for (const auto& [q, c] : theta)
      if (q == p) return c;
    return Scalar(0);
  }

  Scalar theta_mass(const OpenSet& u) const {
    Scalar total(0);
    for (const auto& [q, c] : theta)
      if (u.as<JOpen>().member(q)) total += c;
    return total;
  }
};

namespace detail {
inline std::vector<OpenSet> johnstone_probe_family(const std::vector<JPoint>& hint) {
  std::uint32_t max_idx = 0;
  std::vector<std::uint64_t> max_cols;
  for (const auto& a : hint) {
    max_idx = std::max(max_idx, a.column);
    if (a.maximal())
      max_cols.push_back(a.column);
    else
      max_idx = std::max(max_idx, *a.height);
  }
  std::vector<OpenSet> base;
  base.emplace_back(JOpen::empty());
  base.emplace_back(JOpen::full());
  for (std::uint32_t i = 0; i <= max_idx + 2; ++i) {
    base.emplace_back(j_up_level(i));
    base.emplace_back(j_u_k(i));
  }
  for (const auto& a : hint) {
    if (a.maximal()) continue;
    Crescent cres = singleton_crescent_j(a);
    base.push_back(cres.outer);
    base.push_back(cres.inner);
    base.emplace_back(j_up_point(a));
  }
  for (auto c : max_cols) base.emplace_back(j_largest_open_for_trace(NcofOpen::cofinite({c})));
  if (!max_cols.empty())
    base.emplace_back(j_largest_open_for_trace(NcofOpen::cofinite(max_cols)));
  // one closure round, deduplicated
  std::vector<OpenSet> fam = base;
  auto push_unique = [&](const OpenSet& u) {
    for (const auto& v : fam)
      if (open_equal(u, v)) return;
    fam.push_back(u);
  };
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      push_unique(open_union(base[i], base[j]));
      push_unique(open_intersect(base[i], base[j]));
    }
  return fam;
}
} // namespace detail

/// Full decomposition nu = theta + r*mu of a bounded black-box valuation on J:
/// finite-height atoms through singleton crescents, maximal atoms by
/// transporting nu* to the maximal-point subspace (N_cof) via the largest
/// opens for a trace, then the N_cof decomposition. Verified exactly on a
/// probe family generated from the hint.
inline JohnstoneDecomposition decompose_johnstone(const ValuationFn& nu,
                                                  const std::vector<JPoint>& support_hint) {
  std::vector<JPoint> finite_hint;
  std::vector<std::uint64_t> max_cols;
  for (const auto& a : support_hint) {
    if (a.maximal())
      max_cols.push_back(a.column);
    else
      finite_hint.push_back(a);
  }

  JohnstoneDecomposition out;
  for (const auto& a : finite_hint) {
    Scalar mass = atom_at(nu, singleton_crescent_j(a));
    if (!mass.is_zero()) out.theta.emplace_back(a, mass);
  }
  ValuationFn star = nu_star(nu, finite_hint);
  ValuationFn nu_inf = [star](const OpenSet& w) {
    return star(OpenSet(j_largest_open_for_trace(w.as<NcofOpen>())));
  };
  NcofDecomposition nd = decompose_ncof(nu_inf, max_cols);
  for (const auto& [i, c] : nd.alpha)
    out.theta.emplace_back(jpoint_max(static_cast<std::uint32_t>(i)), c);
  out.r = nd.r;

  for (const auto& u : detail::johnstone_probe_family(support_hint)) {
    Scalar expect = out.theta_mass(u);
    if (!u.is_empty()) expect += out.r;
    if (nu(u) != expect)
      fail("verification-failed",
           "support hint too small or input is not theta + r*mu; mismatch at " + u.to_string());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Borel masses of discrete valuations on J.
// ---------------------------------------------------------------------------

struct BorelFiniteSet {
  std::vector<JPoint> points;
};
struct BorelMBand {  // M_{k,l}: maximal points with k < column <= l
  std::uint32_t k, l;
};
struct BorelMTail {  // M_k: maximal points with column > k
  std::uint32_t k;
};
struct BorelUpD {  // up D_k
  std::uint32_t k;
};
struct BorelDownD {  // down D_k
  std::uint32_t k;
};
struct BorelUkOpen {  // J \ down D_k
  std::uint32_t k;
};
using JBorelDescriptor =
    std::variant<BorelFiniteSet, BorelMBand, BorelMTail, BorelUpD, BorelDownD, BorelUkOpen>;

inline bool borel_member(const JBorelDescriptor& b, const JPoint& p) {
  struct Visitor {
    const JPoint& p;
    bool operator()(const BorelFiniteSet& s) const {
      return std::find(s.points.begin(), s.points.end(), p) != s.points.end();
    }
    bool operator()(const BorelMBand& m) const {
      return p.maximal() && m.k < p.column && p.column <= m.l;
    }
    bool operator()(const BorelMTail& m) const { return p.maximal() && p.column > m.k; }
    bool operator()(const BorelUpD& d) const {
      // finite points of the first k+1 columns, plus every maximal point
      return p.maximal() || p.column <= d.k;
    }
    bool operator()(const BorelDownD& d) const {
      if (p.maximal()) return p.column <= d.k;
      return p.column <= d.k || *p.height <= d.k;
    }
    bool operator()(const BorelUkOpen& u) const {
      if (p.maximal()) return p.column > u.k;
      return p.column > u.k && *p.height > u.k;
    }
  };
  return std::visit(Visitor{p}, b);
}

/// Mass of the unique measure extension of a discrete valuation on a Borel
/// set: the sum of the coefficients at points satisfying the descriptor.
inline Scalar borel_mass(const std::vector<std::pair<JPoint, Scalar>>& tau,
                         const JBorelDescriptor& b) {
  if (const auto* band = std::get_if<BorelMBand>(&b))
    require(band->k < band->l, "invalid-descriptor", "MBand requires k < l");
  Scalar total(0);
  for (const auto& [p, c] : tau)
    if (borel_member(b, p)) total += c;
  return total;
}

// ---------------------------------------------------------------------------
// The finite-stage mass-escape falsifier behind non-minimality.
// ---------------------------------------------------------------------------

struct EscapeResult {
  std::uint32_t k = 0;
  JOpen witness;
  Scalar gap;
  std::vector<Scalar> family_values;  // each member's mass on the witness

  EscapeResult() : witness(JOpen::empty()), gap(0) {}
};

using JDiscrete = std::vector<std::pair<JPoint, Scalar>>;

namespace detail {
inline std::uint32_t max_support_index(const JDiscrete& d) {
  std::uint32_t m = 0;
  for (const auto& [p, c] : d) {
    m = std::max(m, p.column);
    if (!p.maximal()) m = std::max(m, *p.height);
  }
  return m;
}

inline Scalar discrete_mass(const JDiscrete& d, const JOpen& u) {
  Scalar total(0);
  for (const auto& [p, c] : d)
    if (u.member(p)) total += c;
  return total;
}
} // namespace detail

/// One open u_k(k), with k beyond every index in the family's and theta's
/// supports, on which every family member vanishes while theta + r*mu keeps at
/// least r: no finite family of discrete valuations dominated by theta + r*mu
/// approaches it on all opens.
inline EscapeResult escape_falsifier(const JDiscrete& theta, const Scalar& r,
                                     const std::vector<JDiscrete>& family) {
  require(r.is_finite() && Scalar(0) < r, "precondition-violated", "need r > 0");
  for (const auto& [p, c] : theta)
    require(c.is_finite(), "precondition-violated", "theta must be a bounded discrete valuation");

  // domination pre-check on an auto-generated probe family
  std::vector<JPoint> hint;
  for (const auto& [p, c] : theta) hint.push_back(p);
  for (const auto& member : family)
    for (const auto& [p, c] : member) hint.push_back(p);
  auto probes = detail::johnstone_probe_family(hint);
  for (std::size_t m = 0; m < family.size(); ++m) {
    for (const auto& u : probes) {
      Scalar lhs = detail::discrete_mass(family[m], u.as<JOpen>());
      Scalar rhs = detail::discrete_mass(theta, u.as<JOpen>());
      if (!u.is_empty()) rhs += r;
      if (!(lhs <= rhs))
        fail("family-not-dominated", "member " + std::to_string(m) + " exceeds theta + r*mu at " +
                                         u.to_string());
    }
  }

  bool any = !theta.empty();
  std::uint32_t max_idx = detail::max_support_index(theta);
  for (const auto& member : family) {
    if (!member.empty()) any = true;
    max_idx = std::max(max_idx, detail::max_support_index(member));
  }
  EscapeResult out;
  out.k = any ? max_idx + 1 : 0;
  out.witness = j_u_k(out.k);
  Scalar target = detail::discrete_mass(theta, out.witness) + r;
  Scalar best(0);
  for (const auto& member : family) {
    out.family_values.push_back(detail::discrete_mass(member, out.witness));
    best = std::max(best, out.family_values.back(), [](const Scalar& a, const Scalar& b) { return a < b; });
  }
  out.gap = target - best;
  require(out.gap >= r, "internal-invariant", "the witness must leave a gap of at least r");
  return out;
}

/// Point-continuity witness for mu: the canonically least member of U pins
/// mu above any r < 1 on every open neighborhood.
inline std::vector<JPoint> pc_witness_mu(const JOpen& u, const Scalar& r) {
  require(!u.is_empty(), "empty-open", "mu needs a nonempty open");
  require(r.is_finite() && r < Scalar(1), "r-out-of-range", "need 0 <= r < 1");
  return {u.least_member()};
}

} // namespace crescent
