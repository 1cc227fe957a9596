// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "crescent/poset.hpp"
#include "crescent/scalar.hpp"
#include "crescent/valuation.hpp"

namespace crescent {

/// Layer-cake integral of a monotone map h against a valuation on a finite
/// poset: with the distinct sorted values 0 = v_0 < v_1 < ... < v_k of h,
/// sum (v_i - v_{i-1}) * nu({x : h(x) >= v_i}); each level set is an upset.
inline Scalar integrate(const PosetPtr& p, const std::vector<Scalar>& h, const ValuationFn& nu,
                        std::size_t max_points = kDefaultMaxPosetPoints) {
  require(h.size() == p->size(), "invalid-integrand", "one value per poset element");
  for (const auto& v : h)
    require(v.is_finite(), "infinite-value", "integrand must take finite values");
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < p->size(); ++j)
      if (p->leq(i, j))
        require(h[i] <= h[j], "non-monotone-integrand",
                "h(" + p->id(i) + ") > h(" + p->id(j) + ") although " + p->id(i) +
                    " <= " + p->id(j));
  (void)max_points;
  std::vector<Rat> values{Rat(0)};
  for (const auto& v : h) values.push_back(v.finite_value());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Scalar total(0);
  for (std::size_t i = 1; i < values.size(); ++i) {
    std::uint32_t level = 0;
    for (std::size_t x = 0; x < p->size(); ++x)
      if (h[x].finite_value() >= values[i]) level |= 1u << x;
    Scalar mass = nu(OpenSet(UpSetFin(p, level)));
    require(mass.is_finite(), "infinite-value", "valuation must be finite on all upsets");
    total += Scalar(values[i] - values[i - 1]) * mass;
  }
  return total;
}

inline Scalar integrate(const PosetPtr& p, const std::vector<Scalar>& h, const Valuation& nu,
                        std::size_t max_points = kDefaultMaxPosetPoints) {
  return integrate(p, h, as_fn(nu), max_points);
}

/// Componentwise product poset; identifiers are joined with '|'.
inline PosetPtr product_poset(const PosetPtr& p, const PosetPtr& q) {
  require(p->size() * q->size() <= 32, "size-limit-exceeded", "product exceeds 32 points");
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < q->size(); ++j) ids.push_back(p->id(i) + "|" + q->id(j));
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < q->size(); ++j)
      for (std::size_t i2 = 0; i2 < p->size(); ++i2)
        for (std::size_t j2 = 0; j2 < q->size(); ++j2)
          if (p->leq(i, i2) && q->leq(j, j2))
            rel.emplace_back(p->id(i) + "|" + q->id(j), p->id(i2) + "|" + q->id(j2));
  return std::make_shared<FinitePoset>(FinitePoset::from_relation(std::move(ids), rel));
}

struct FubiniEqual {
  Scalar value;
};
struct FubiniUnequal {
  Scalar lhs, rhs;
};
using FubiniVerdict = std::variant<FubiniEqual, FubiniUnequal>;

namespace detail {
/// Zero, Dirac and Simple valuations as explicit point masses.
inline std::vector<std::pair<Scalar, std::string>> simple_terms(const Valuation& nu) {
  std::vector<std::pair<Scalar, std::string>> out;
  if (nu.get_if<ZeroVal>()) return out;
  if (const auto* d = nu.get_if<DiracVal>()) {
    const auto* pp = std::get_if<PosetPoint>(&d->point);
    require(pp != nullptr, "non-simple-valuation", "Dirac point must live on the poset");
    out.emplace_back(Scalar(1), pp->id);
    return out;
  }
  const auto* s = nu.get_if<SimpleVal>();
  require(s != nullptr, "non-simple-valuation", "Fubini inputs must be simple valuations");
  for (const auto& [c, p] : s->terms) {
    const auto* pp = std::get_if<PosetPoint>(&p);
    require(pp != nullptr, "non-simple-valuation", "simple term on a different space");
    out.emplace_back(c, pp->id);
  }
  return out;
}
} // namespace detail

/// Both iterated integrals of the Fubini-type equation for simple nu, xi and a
/// monotone h on the product, compared exactly. h is row-major over (P, Q).
inline FubiniVerdict fubini_check(const PosetPtr& p, const PosetPtr& q,
                                  const std::vector<Scalar>& h, const Valuation& nu,
                                  const Valuation& xi) {
  require(h.size() == p->size() * q->size(), "invalid-integrand",
          "h must assign a value to every product point");
  // the equation is guaranteed for simple inputs only; enforce that up front
  (void)detail::simple_terms(nu);
  (void)detail::simple_terms(xi);
  auto prod = product_poset(p, q);

  auto h_at = [&](std::size_t i, std::size_t j) -> const Scalar& {
    return h[i * q->size() + j];
  };
  // inner integral over Q for fixed x, then over P
  std::vector<Scalar> g(p->size(), Scalar(0));
  for (std::size_t i = 0; i < p->size(); ++i) {
    std::vector<Scalar> row(q->size());
    for (std::size_t j = 0; j < q->size(); ++j) row[j] = h_at(i, j);
    g[i] = integrate(q, row, xi);
  }
  Scalar lhs = integrate(p, g, nu);
  // inner integral over P for fixed y, then over Q
  std::vector<Scalar> k(q->size(), Scalar(0));
  for (std::size_t j = 0; j < q->size(); ++j) {
    std::vector<Scalar> col(p->size());
    for (std::size_t i = 0; i < p->size(); ++i) col[i] = h_at(i, j);
    k[j] = integrate(p, col, nu);
  }
  Scalar rhs = integrate(q, k, xi);
  // monotonicity of h on the product, checked through the product poset
  std::vector<Scalar> hprod(prod->size(), Scalar(0));
  for (std::size_t i = 0; i < p->size(); ++i)
    for (std::size_t j = 0; j < q->size(); ++j)
      hprod[prod->index(p->id(i) + "|" + q->id(j))] = h_at(i, j);
  for (std::size_t a = 0; a < prod->size(); ++a)
    for (std::size_t b = 0; b < prod->size(); ++b)
      if (prod->leq(a, b))
        require(hprod[a] <= hprod[b], "non-monotone-integrand", "h not monotone on the product");
  if (lhs == rhs) return FubiniEqual{lhs};
  return FubiniUnequal{lhs, rhs};
}

} // namespace crescent
