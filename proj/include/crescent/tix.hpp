// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <vector>

#include "crescent/poset.hpp"
#include "crescent/scalar.hpp"
#include "crescent/valuation.hpp"

namespace crescent {

/// Characteristic valuation of an irreducible closed set: 1 on opens meeting
/// C, 0 elsewhere. For C = down(x) this is the Dirac at x.
inline Valuation egame(ClosedSetFin c) { return Valuation::irred_char(std::move(c)); }

struct PeelResult {
  Scalar r;
  ClosedSetFin c;
  ValuationTable rest;
};

namespace detail {
inline std::vector<Rat> finite_nonzero_values(const ValuationTable& t) {
  std::vector<Rat> vals;
  for (std::size_t i = 0; i < t.upsets().size(); ++i) {
    const Scalar& v = t.value_at(i);
    if (v.is_finite() && !v.is_zero()) vals.push_back(v.finite_value());
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}
} // namespace detail

/// One step of the least-value peeling: r is the least nonzero value, U_r the
/// first open attaining it (canonical order), U_* the largest open whose trace
/// on U_r is null, C its complement. nu' = nu - r * egame(C) is again a
/// valuation and loses the value r.
inline PeelResult peel_least(const ValuationTable& t) {
  for (std::size_t i = 0; i < t.upsets().size(); ++i)
    require(t.value_at(i).is_finite(), "non-finite-valued-input", "peeling needs finite values");
  auto vals = detail::finite_nonzero_values(t);
  require(!vals.empty(), "zero-valuation", "nothing to peel");
  Scalar r(vals.front());

  const PosetPtr& p = t.poset();
  std::optional<UpSetFin> u_r;
  for (const auto& u : t.upsets())
    if (t.value(u) == r) {
      u_r = u;
      break;
    }
  std::uint32_t u_star = 0;
  for (const auto& u : t.upsets())
    if (t.value_of_mask(u.mask() & u_r->mask()).is_zero()) u_star |= u.mask();
  ClosedSetFin c(p, p->full_mask() & ~u_star);
  require(is_irreducible(p, c), "internal-invariant", "peeled complement must be irreducible");

  std::map<std::uint32_t, Scalar> rest;
  for (const auto& u : t.upsets()) {
    bool meets_c = (u.mask() & c.mask()) != 0;
    rest.emplace(u.mask(), meets_c ? t.value(u) - r : t.value(u));
  }
  return PeelResult{r, std::move(c), ValuationTable(p, std::move(rest), p->size())};
}

/// Finite linear combination sum a_i * egame(C_i) with every C_i irreducible.
struct TixDecomposition {
  std::vector<std::pair<Scalar, ClosedSetFin>> terms;

  Valuation to_valuation() const {
    std::vector<std::pair<Scalar, Valuation>> lin;
    for (const auto& [a, c] : terms) lin.emplace_back(a, Valuation::irred_char(c));
    return Valuation::lin_comb(std::move(lin));
  }
};

/// Iterated peeling of a finite-valued bounded valuation table. The number of
/// distinct nonzero values strictly decreases, so at most |Val(nu)| terms.
inline TixDecomposition tix_decompose(const ValuationTable& t) {
  for (std::size_t i = 0; i < t.upsets().size(); ++i)
    require(t.value_at(i).is_finite(), "non-finite-valued-input",
            "decomposition needs a finite-valued table");
  TixDecomposition out;
  ValuationTable cur = t;
  std::size_t budget = detail::finite_nonzero_values(t).size();
  while (!detail::finite_nonzero_values(cur).empty()) {
    require(budget-- > 0, "internal-invariant", "peeling failed to shrink the value set");
    PeelResult step = peel_least(cur);
    out.terms.emplace_back(step.r, step.c);
    cur = std::move(step.rest);
  }
  return out;
}

struct InfiniteSplit {
  Valuation finite_part;
  Valuation infinite_part;
  UpSetFin u_s;
  ClosedSetFin c_infinity;
};

/// Splits a valuation with value infinity on the full space into its bounded
/// restriction to U_s (the union of all opens with finite value) plus the
/// 0/infinity valuation supported outside; the sum recombines exactly.
inline InfiniteSplit split_infinite(const ValuationTable& t) {
  const PosetPtr& p = t.poset();
  require(t.value_of_mask(p->full_mask()).is_infinite(), "no-infinite-value",
          "use tix_decompose for finite-valued tables");
  Rat s(0);  // greatest finite value; 0 when no nonzero finite value exists
  for (std::size_t i = 0; i < t.upsets().size(); ++i)
    if (t.value_at(i).is_finite()) s = std::max(s, t.value_at(i).finite_value());
  std::uint32_t u_s_mask = 0;
  for (const auto& u : t.upsets())
    if (t.value(u).is_finite() && t.value(u).finite_value() <= s) u_s_mask |= u.mask();
  UpSetFin u_s(p, u_s_mask);
  require(t.value_of_mask(u_s_mask).is_finite(), "internal-invariant",
          "the union of finite-value opens must have finite value");
  ClosedSetFin c_inf(p, p->full_mask() & ~u_s_mask);
  require(!c_inf.empty(), "internal-invariant", "full space had finite value");

  std::map<std::uint32_t, Scalar> fin, inf;
  for (const auto& u : t.upsets()) {
    fin.emplace(u.mask(), t.value_of_mask(u.mask() & u_s_mask));
    bool inside = (u.mask() & ~u_s_mask) == 0;
    inf.emplace(u.mask(), inside ? Scalar(0) : Scalar::infinity());
  }
  ValuationTable fin_t(p, std::move(fin), p->size());
  ValuationTable inf_t(p, std::move(inf), p->size());
  for (const auto& u : t.upsets())
    require(fin_t.value(u) + inf_t.value(u) == t.value(u), "internal-invariant",
            "recombination must reproduce the input");
  return InfiniteSplit{Valuation::table(std::move(fin_t)), Valuation::table(std::move(inf_t)),
                       std::move(u_s), std::move(c_inf)};
}

/// Point-continuity witness on a finite poset: the smallest A inside U (size
/// order, then canonical order) such that every open containing A has value
/// above r. Exists whenever r < nu(U).
inline std::vector<std::string> point_continuity_table(const ValuationTable& t, const UpSetFin& u,
                                                       const Scalar& r) {
  require(same_poset(u.poset(), t.poset()), "variant-mismatch", "upset of a different poset");
  require(r < t.value(u), "precondition-violated", "need r < nu(U)");
  const PosetPtr& p = t.poset();
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t a = u.mask();; a = (a - 1) & u.mask()) {  // all submasks of U
    subsets.push_back(a);
    if (a == 0) break;
  }
  std::sort(subsets.begin(), subsets.end(), [&](std::uint32_t x, std::uint32_t y) {
    int px = std::popcount(x), py = std::popcount(y);
    if (px != py) return px < py;
    return mask_lex_less(*p, x, y);
  });
  for (std::uint32_t a : subsets) {
    bool ok = true;
    for (const auto& v : t.upsets())
      if ((a & ~v.mask()) == 0 && !(r < t.value(v))) {
        ok = false;
        break;
      }
    if (ok) return detail::mask_ids(*p, a);
  }
  fail("internal-invariant", "finite spaces always admit a witness");
}

} // namespace crescent
