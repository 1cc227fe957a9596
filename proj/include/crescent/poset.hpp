// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "crescent/error.hpp"

namespace crescent {

/// Finite T0 poset over opaque point identifiers. Immutable after construction;
/// the order relation is validated (reflexive, transitive, antisymmetric).
/// Elements are kept sorted so that index order equals identifier order.
class FinitePoset {
public:
  /// `leq_pairs` is the full relation; construction validates the poset axioms.
  static FinitePoset from_relation(std::vector<std::string> ids,
                                   const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
    FinitePoset p(std::move(ids));
    for (const auto& [a, b] : leq_pairs) p.up_[p.index(a)] |= mask_bit(p.index(b));
    for (std::size_t i = 0; i < p.size(); ++i)
      require((p.up_[i] >> i) & 1u, "invalid-poset", "relation not reflexive at " + p.id(i));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p.leq(i, j))
          require((p.up_[i] & p.up_[j]) == p.up_[j], "invalid-poset",
                  "relation not transitive at " + p.id(i) + " <= " + p.id(j));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        require(!(p.leq(i, j) && p.leq(j, i)), "invalid-poset",
                "antisymmetry violated between " + p.id(i) + " and " + p.id(j));
    return p;
  }

  /// Builds from generating pairs: computes the reflexive-transitive closure
  /// and rejects cycles.
  static FinitePoset from_generators(std::vector<std::string> ids,
                                     const std::vector<std::pair<std::string, std::string>>& pairs) {
    FinitePoset p(std::move(ids));
    for (std::size_t i = 0; i < p.size(); ++i) p.up_[i] |= mask_bit(i);
    for (const auto& [a, b] : pairs) p.up_[p.index(a)] |= mask_bit(p.index(b));
    // Floyd-Warshall style closure on the reachability masks.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (p.leq(i, j) && (p.up_[i] | p.up_[j]) != p.up_[i]) {
            p.up_[i] |= p.up_[j];
            changed = true;
          }
    }
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        require(!(p.leq(i, j) && p.leq(j, i)), "poset-cycle",
                "cycle through " + p.id(i) + " and " + p.id(j));
    return p;
  }

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }

  std::size_t index(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    require(it != ids_.end() && *it == id, "unknown-point", "no point '" + id + "'");
    return static_cast<std::size_t>(it - ids_.begin());
  }

  bool contains(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    return it != ids_.end() && *it == id;
  }

  bool leq(std::size_t i, std::size_t j) const { return (up_[i] >> j) & 1u; }
  bool leq(const std::string& a, const std::string& b) const { return leq(index(a), index(b)); }

  /// Bitmask of {j : i <= j}.
  std::uint32_t upset_of(std::size_t i) const { return up_[i]; }

  std::uint32_t full_mask() const {
    return size() == 32 ? ~0u : ((1u << size()) - 1u);
  }

  bool is_up_closed(std::uint32_t m) const {
    for (std::size_t i = 0; i < size(); ++i)
      if ((m >> i) & 1u)
        if ((up_[i] & m) != up_[i]) return false;
    return true;
  }

  bool is_down_closed(std::uint32_t m) const {
    for (std::size_t i = 0; i < size(); ++i)
      if ((m >> i) & 1u)
        for (std::size_t j = 0; j < size(); ++j)
          if (leq(j, i) && !((m >> j) & 1u)) return false;
    return true;
  }

  friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
    return a.ids_ == b.ids_ && a.up_ == b.up_;
  }

private:
  explicit FinitePoset(std::vector<std::string> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    require(std::adjacent_find(ids_.begin(), ids_.end()) == ids_.end(), "invalid-poset",
            "duplicate point identifiers");
    require(ids_.size() <= 32, "size-limit-exceeded", "at most 32 points supported");
    up_.assign(ids_.size(), 0);
  }

  static std::uint32_t mask_bit(std::size_t i) { return 1u << i; }

  std::vector<std::string> ids_;
  std::vector<std::uint32_t> up_;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

inline bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace detail {
inline std::vector<std::string> mask_ids(const FinitePoset& p, std::uint32_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if ((m >> i) & 1u) out.push_back(p.id(i));
  return out;
}
} // namespace detail

/// Upward-closed subset: a Scott open of the finite poset.
class UpSetFin {
public:
  UpSetFin(PosetPtr poset, std::uint32_t mask) : poset_(std::move(poset)), mask_(mask) {
    require(poset_ != nullptr, "invalid-upset", "null poset");
    require((mask_ & ~poset_->full_mask()) == 0, "invalid-upset", "mask out of range");
    require(poset_->is_up_closed(mask_), "invalid-upset", "carrier not upward closed");
  }

  UpSetFin(PosetPtr poset, const std::vector<std::string>& carrier_ids)
      : UpSetFin(poset, ids_to_mask(*poset, carrier_ids)) {}

  const PosetPtr& poset() const { return poset_; }
  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  bool contains(const std::string& id) const {
    return poset_->contains(id) && ((mask_ >> poset_->index(id)) & 1u);
  }
  std::vector<std::string> carrier() const { return detail::mask_ids(*poset_, mask_); }

  static std::uint32_t ids_to_mask(const FinitePoset& p, const std::vector<std::string>& ids) {
    std::uint32_t m = 0;
    for (const auto& id : ids) m |= 1u << p.index(id);
    return m;
  }

private:
  PosetPtr poset_;
  std::uint32_t mask_;
};

/// Downward-closed subset: a Scott closed set of the finite poset.
class ClosedSetFin {
public:
  ClosedSetFin(PosetPtr poset, std::uint32_t mask) : poset_(std::move(poset)), mask_(mask) {
    require(poset_ != nullptr, "invalid-closed-set", "null poset");
    require((mask_ & ~poset_->full_mask()) == 0, "invalid-closed-set", "mask out of range");
    require(poset_->is_down_closed(mask_), "invalid-closed-set", "carrier not downward closed");
  }

  ClosedSetFin(PosetPtr poset, const std::vector<std::string>& carrier_ids)
      : ClosedSetFin(poset, UpSetFin::ids_to_mask(*poset, carrier_ids)) {}

  const PosetPtr& poset() const { return poset_; }
  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  bool contains(const std::string& id) const {
    return poset_->contains(id) && ((mask_ >> poset_->index(id)) & 1u);
  }
  std::vector<std::string> carrier() const { return detail::mask_ids(*poset_, mask_); }

private:
  PosetPtr poset_;
  std::uint32_t mask_;
};

inline ClosedSetFin complement(const UpSetFin& u) {
  return ClosedSetFin(u.poset(), u.poset()->full_mask() & ~u.mask());
}

inline UpSetFin complement(const ClosedSetFin& c) {
  return UpSetFin(c.poset(), c.poset()->full_mask() & ~c.mask());
}

inline UpSetFin principal_upset(const PosetPtr& p, const std::string& id) {
  return UpSetFin(p, p->upset_of(p->index(id)));
}

inline ClosedSetFin principal_downset(const PosetPtr& p, const std::string& id) {
  std::uint32_t m = 0;
  std::size_t j = p->index(id);
  for (std::size_t i = 0; i < p->size(); ++i)
    if (p->leq(i, j)) m |= 1u << i;
  return ClosedSetFin(p, m);
}

/// Canonical order on subsets: lexicographic over sorted point identifiers.
/// Since elements are stored sorted, this is lexicographic on ascending index
/// sequences.
inline bool mask_lex_less(const FinitePoset& p, std::uint32_t a, std::uint32_t b) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool ia = (a >> i) & 1u, ib = (b >> i) & 1u;
    if (ia != ib) {
      // The set whose next element is smaller comes first; a missing element
      // means this set is a strict prefix, which sorts first.
      std::uint32_t rest_a = a >> i, rest_b = b >> i;
      if (rest_a == 0) return true;
      if (rest_b == 0) return false;
      return ia;
    }
  }
  return false;
}

inline bool canonical_less(const UpSetFin& a, const UpSetFin& b) {
  return mask_lex_less(*a.poset(), a.mask(), b.mask());
}

inline constexpr std::size_t kDefaultMaxPosetPoints = 16;

/// Every upward-closed subset, exactly once, in canonical order.
inline std::vector<UpSetFin> all_upsets(const PosetPtr& p,
                                        std::size_t max_points = kDefaultMaxPosetPoints) {
  require(p->size() <= max_points, "size-limit-exceeded",
          "poset has " + std::to_string(p->size()) + " points; bound is " +
              std::to_string(max_points));
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0;; ++m) {
    if (p->is_up_closed(m)) masks.push_back(m);
    if (m == p->full_mask()) break;
  }
  std::sort(masks.begin(), masks.end(),
            [&](std::uint32_t a, std::uint32_t b) { return mask_lex_less(*p, a, b); });
  std::vector<UpSetFin> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(p, m);
  return out;
}

/// C is irreducible iff it is nonempty and every two opens meeting C meet it
/// jointly. On an upset basis this reduces to pairwise directedness of C:
/// for x, y in C the opens up(x), up(y) are the least opens meeting C at x, y.
inline bool is_irreducible(const PosetPtr& p, const ClosedSetFin& c) {
  require(same_poset(p, c.poset()), "variant-mismatch", "closed set of a different poset");
  if (c.empty()) return false;
  std::uint32_t cm = c.mask();
  for (std::size_t i = 0; i < p->size(); ++i) {
    if (!((cm >> i) & 1u)) continue;
    for (std::size_t j = i + 1; j < p->size(); ++j) {
      if (!((cm >> j) & 1u)) continue;
      std::uint32_t joint = p->upset_of(i) & p->upset_of(j);
      if ((joint & cm) == 0) return false;
    }
  }
  return true;
}

struct Sober {};
struct NotSober {
  ClosedSetFin witness;  // irreducible closed set that is no point closure
};
using SoberVerdict = std::variant<Sober, NotSober>;

/// Exhaustive soberness check: every irreducible closed set must be the
/// closure of exactly one point. Finite T0 posets always pass; the check is
/// still performed honestly.
inline SoberVerdict sober_check(const PosetPtr& p,
                                std::size_t max_points = kDefaultMaxPosetPoints) {
  auto upsets = all_upsets(p, max_points);
  for (const auto& u : upsets) {
    ClosedSetFin c = complement(u);
    if (!is_irreducible(p, c)) continue;
    std::size_t matches = 0;
    for (std::size_t x = 0; x < p->size(); ++x)
      if (principal_downset(p, p->id(x)).mask() == c.mask()) ++matches;
    if (matches != 1) return NotSober{c};
  }
  return Sober{};
}

/// Text format: one line `points: a b c`, then lines `a <= b`.
/// The relation is closed reflexively and transitively; cycles are rejected.
inline FinitePoset parse_poset(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> pairs;
  bool have_points = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!have_points) {
      require(tok == "points:", "parse-error", "expected 'points:' line, got '" + line + "'");
      std::string id;
      while (ls >> id) ids.push_back(id);
      have_points = true;
      continue;
    }
    std::string rel, rhs;
    require(static_cast<bool>(ls >> rel >> rhs), "parse-error", "expected 'a <= b', got '" + line + "'");
    require(rel == "<=", "parse-error", "expected '<=', got '" + rel + "'");
    pairs.emplace_back(tok, rhs);
  }
  require(have_points, "parse-error", "missing 'points:' line");
  return FinitePoset::from_generators(std::move(ids), pairs);
}

} // namespace crescent
