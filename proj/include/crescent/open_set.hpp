// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "crescent/error.hpp"
#include "crescent/johnstone_space.hpp"
#include "crescent/ncof.hpp"
#include "crescent/poset.hpp"
#include "crescent/smyth.hpp"
#include "crescent/sorgenfrey.hpp"

namespace crescent {

enum class OpenKind { fin_up, johnstone, ncof, rl, smyth };

inline std::string to_string(OpenKind k) {
  switch (k) {
    case OpenKind::fin_up: return "finup";
    case OpenKind::johnstone: return "j";
    case OpenKind::ncof: return "ncof";
    case OpenKind::rl: return "rl";
    case OpenKind::smyth: return "smyth";
  }
  return "?";
}

/// Open set of one of the five supported spaces.
class OpenSet {
public:
  using Rep = std::variant<UpSetFin, JOpen, NcofOpen, RlOpen, SmythOpen>;

  OpenSet(UpSetFin u) : rep_(std::move(u)) {}
  OpenSet(JOpen u) : rep_(std::move(u)) {}
  OpenSet(NcofOpen u) : rep_(std::move(u)) {}
  OpenSet(RlOpen u) : rep_(std::move(u)) {}
  OpenSet(SmythOpen u) : rep_(std::move(u)) {}

  OpenKind kind() const { return static_cast<OpenKind>(rep_.index()); }

  template <typename T>
  const T& as() const {
    const T* p = std::get_if<T>(&rep_);
    require(p != nullptr, "variant-mismatch", "open set holds a different space variant");
    return *p;
  }

  const Rep& rep() const { return rep_; }

  bool is_empty() const {
    return std::visit(
        [](const auto& u) -> bool {
          using T = std::decay_t<decltype(u)>;
          if constexpr (std::is_same_v<T, UpSetFin>)
            return u.empty();
          else
            return u.is_empty();
        },
        rep_);
  }

  std::string to_string() const {
    return std::visit(
        [](const auto& u) -> std::string {
          using T = std::decay_t<decltype(u)>;
          if constexpr (std::is_same_v<T, UpSetFin>) {
            std::string s = "{";
            auto ids = u.carrier();
            for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + ids[i];
            return s + "}";
          } else {
            return u.to_string();
          }
        },
        rep_);
  }

private:
  Rep rep_;
};

namespace detail {
inline void check_same_kind(const OpenSet& a, const OpenSet& b, const char* what) {
  require(a.kind() == b.kind(), "variant-mismatch",
          std::string(what) + " needs matching variants: " + to_string(a.kind()) + " vs " +
              to_string(b.kind()));
  if (a.kind() == OpenKind::fin_up)
    require(same_poset(a.as<UpSetFin>().poset(), b.as<UpSetFin>().poset()), "variant-mismatch",
            "upsets of different posets");
}
} // namespace detail

inline OpenSet open_union(const OpenSet& a, const OpenSet& b) {
  detail::check_same_kind(a, b, "union");
  switch (a.kind()) {
    case OpenKind::fin_up:
      return OpenSet(UpSetFin(a.as<UpSetFin>().poset(), a.as<UpSetFin>().mask() | b.as<UpSetFin>().mask()));
    case OpenKind::johnstone: return OpenSet(j_union(a.as<JOpen>(), b.as<JOpen>()));
    case OpenKind::ncof: return OpenSet(ncof_union(a.as<NcofOpen>(), b.as<NcofOpen>()));
    case OpenKind::rl: return OpenSet(rl_union(a.as<RlOpen>(), b.as<RlOpen>()));
    case OpenKind::smyth: return OpenSet(smyth_union(a.as<SmythOpen>(), b.as<SmythOpen>()));
  }
  fail("internal-invariant", "unhandled open kind");
}

inline OpenSet open_intersect(const OpenSet& a, const OpenSet& b) {
  detail::check_same_kind(a, b, "intersection");
  switch (a.kind()) {
    case OpenKind::fin_up:
      return OpenSet(UpSetFin(a.as<UpSetFin>().poset(), a.as<UpSetFin>().mask() & b.as<UpSetFin>().mask()));
    case OpenKind::johnstone: return OpenSet(j_intersect(a.as<JOpen>(), b.as<JOpen>()));
    case OpenKind::ncof: return OpenSet(ncof_intersect(a.as<NcofOpen>(), b.as<NcofOpen>()));
    case OpenKind::rl: return OpenSet(rl_intersect(a.as<RlOpen>(), b.as<RlOpen>()));
    case OpenKind::smyth: return OpenSet(smyth_intersect(a.as<SmythOpen>(), b.as<SmythOpen>()));
  }
  fail("internal-invariant", "unhandled open kind");
}

inline bool open_subset(const OpenSet& a, const OpenSet& b) {
  detail::check_same_kind(a, b, "inclusion");
  switch (a.kind()) {
    case OpenKind::fin_up:
      return (a.as<UpSetFin>().mask() & ~b.as<UpSetFin>().mask()) == 0;
    case OpenKind::johnstone: return j_subset(a.as<JOpen>(), b.as<JOpen>());
    case OpenKind::ncof: return ncof_subset(a.as<NcofOpen>(), b.as<NcofOpen>());
    case OpenKind::rl: return rl_subset(a.as<RlOpen>(), b.as<RlOpen>());
    case OpenKind::smyth: return smyth_subset(a.as<SmythOpen>(), b.as<SmythOpen>());
  }
  fail("internal-invariant", "unhandled open kind");
}

inline bool open_equal(const OpenSet& a, const OpenSet& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case OpenKind::fin_up:
      return same_poset(a.as<UpSetFin>().poset(), b.as<UpSetFin>().poset()) &&
             a.as<UpSetFin>().mask() == b.as<UpSetFin>().mask();
    case OpenKind::johnstone: return a.as<JOpen>() == b.as<JOpen>();
    case OpenKind::ncof: return a.as<NcofOpen>() == b.as<NcofOpen>();
    case OpenKind::rl: return a.as<RlOpen>() == b.as<RlOpen>();
    case OpenKind::smyth: return a.as<SmythOpen>() == b.as<SmythOpen>();
  }
  fail("internal-invariant", "unhandled open kind");
}

/// Canonical order within one variant; used for deterministic probe sweeps
/// and normal forms.
inline bool open_less(const OpenSet& a, const OpenSet& b) {
  detail::check_same_kind(a, b, "canonical order");
  switch (a.kind()) {
    case OpenKind::fin_up: return canonical_less(a.as<UpSetFin>(), b.as<UpSetFin>());
    case OpenKind::johnstone: return canonical_less(a.as<JOpen>(), b.as<JOpen>());
    case OpenKind::ncof: return canonical_less(a.as<NcofOpen>(), b.as<NcofOpen>());
    case OpenKind::rl: return canonical_less(a.as<RlOpen>(), b.as<RlOpen>());
    case OpenKind::smyth: return canonical_less(a.as<SmythOpen>(), b.as<SmythOpen>());
  }
  fail("internal-invariant", "unhandled open kind");
}

/// The empty open of the same space (and poset) as the sample.
inline OpenSet empty_like(const OpenSet& sample) {
  switch (sample.kind()) {
    case OpenKind::fin_up: return OpenSet(UpSetFin(sample.as<UpSetFin>().poset(), 0u));
    case OpenKind::johnstone: return OpenSet(JOpen::empty());
    case OpenKind::ncof: return OpenSet(NcofOpen::empty());
    case OpenKind::rl: return OpenSet(RlOpen());
    case OpenKind::smyth: return OpenSet(SmythOpen());
  }
  fail("internal-invariant", "unhandled open kind");
}

/// Crescent U \ V with the stipulation V subset U.
struct Crescent {
  OpenSet outer;
  OpenSet inner;

  Crescent(OpenSet u, OpenSet v) : outer(std::move(u)), inner(std::move(v)) {
    require(open_subset(inner, outer), "invalid-crescent", "inner open must lie inside outer");
  }

  bool denotes_empty() const { return open_subset(outer, inner); }
};

/// Crescents (U1 \ V1) and (U2 \ V2) are disjoint iff U1 n U2 lies in V1 u V2.
inline bool crescents_disjoint(const Crescent& a, const Crescent& b) {
  return open_subset(open_intersect(a.outer, b.outer), open_union(a.inner, b.inner));
}

/// Element of the ring of sets generated by the opens: a finite disjoint union
/// of crescents, canonically ordered.
class RingElement {
public:
  RingElement() = default;

  explicit RingElement(std::vector<Crescent> crescents) : crescents_(std::move(crescents)) {
    for (std::size_t i = 0; i < crescents_.size(); ++i)
      for (std::size_t j = i + 1; j < crescents_.size(); ++j)
        require(crescents_disjoint(crescents_[i], crescents_[j]), "invalid-ring-element",
                "crescents must be pairwise disjoint");
    std::sort(crescents_.begin(), crescents_.end(), [](const Crescent& x, const Crescent& y) {
      if (open_less(x.outer, y.outer)) return true;
      if (open_less(y.outer, x.outer)) return false;
      return open_less(x.inner, y.inner);
    });
  }

  const std::vector<Crescent>& crescents() const { return crescents_; }
  bool empty() const { return crescents_.empty(); }

private:
  std::vector<Crescent> crescents_;
};

/// Finite stand-in for "all opens" on infinite spaces. All members share one
/// variant.
class ProbeSet {
public:
  explicit ProbeSet(std::vector<OpenSet> opens) : opens_(std::move(opens)) {
    require(!opens_.empty(), "invalid-probe-set", "probe set must be nonempty");
    for (std::size_t i = 1; i < opens_.size(); ++i)
      detail::check_same_kind(opens_[0], opens_[i], "probe set");
  }

  const std::vector<OpenSet>& opens() const { return opens_; }

private:
  std::vector<OpenSet> opens_;
};

inline constexpr std::size_t kProbeClosureCap = 4096;

/// Closes a probe family under pairwise union and intersection, sorts it
/// canonically and removes duplicates. The family is kept sorted so
/// membership tests are logarithmic.
inline ProbeSet close_probes(const ProbeSet& probes) {
  std::vector<OpenSet> family = probes.opens();
  std::sort(family.begin(), family.end(), open_less);
  family.erase(std::unique(family.begin(), family.end(),
                           [](const OpenSet& a, const OpenSet& b) { return open_equal(a, b); }),
               family.end());
  auto insert_new = [&](const OpenSet& u, std::vector<OpenSet>& fresh) {
    auto it = std::lower_bound(family.begin(), family.end(), u, open_less);
    if (it != family.end() && open_equal(*it, u)) return;
    auto jt = std::lower_bound(fresh.begin(), fresh.end(), u, open_less);
    if (jt != fresh.end() && open_equal(*jt, u)) return;
    fresh.insert(jt, u);
  };
  std::vector<OpenSet> frontier = family;
  while (!frontier.empty()) {
    std::vector<OpenSet> fresh;
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (const auto& v : family) {
        insert_new(open_union(frontier[i], v), fresh);
        insert_new(open_intersect(frontier[i], v), fresh);
        require(family.size() + fresh.size() <= kProbeClosureCap, "probe-explosion",
                "probe closure exceeded " + std::to_string(kProbeClosureCap) + " opens");
      }
    std::vector<OpenSet> merged;
    merged.reserve(family.size() + fresh.size());
    std::merge(family.begin(), family.end(), fresh.begin(), fresh.end(),
               std::back_inserter(merged), open_less);
    family = std::move(merged);
    frontier = std::move(fresh);
  }
  return ProbeSet(std::move(family));
}

} // namespace crescent
