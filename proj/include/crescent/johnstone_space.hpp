// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crescent/error.hpp"
#include "crescent/ncof.hpp"

namespace crescent {

/// Point of Johnstone's dcpo J = N x (N u {omega}):
/// (a,b) <= (c,d) iff (a = c and b <= d) or (d = omega and b <= c).
struct JPoint {
  std::uint32_t column = 0;
  std::optional<std::uint32_t> height;  // nullopt = omega (maximal point)

  bool maximal() const { return !height.has_value(); }

  friend bool operator==(const JPoint& a, const JPoint& b) {
    return a.column == b.column && a.height == b.height;
  }
  friend bool operator<(const JPoint& a, const JPoint& b) {  // container order only
    if (a.column != b.column) return a.column < b.column;
    if (a.maximal() != b.maximal()) return b.maximal();
    if (a.maximal()) return false;
    return *a.height < *b.height;
  }

  std::string to_string() const {
    return "(" + std::to_string(column) + "," + (maximal() ? "w" : std::to_string(*height)) + ")";
  }
};

inline JPoint jpoint(std::uint32_t column, std::uint32_t height) { return {column, height}; }
inline JPoint jpoint_max(std::uint32_t column) { return {column, std::nullopt}; }

inline bool j_leq(const JPoint& a, const JPoint& b) {
  if (a.column == b.column) {
    if (b.maximal()) return true;
    if (a.maximal()) return false;
    return *a.height <= *b.height;
  }
  if (!b.maximal()) return false;
  if (a.maximal()) return false;
  return *a.height <= b.column;
}

/// Scott open of J, encoded by an eventually constant column-threshold map:
/// column n admits the finite points of height >= t(n) and its maximal point,
/// when t(n) is a natural; an absent threshold (Excluded) makes the column
/// trace empty. `overrides` lists the exceptional columns, every column at or
/// beyond the (derived, minimal) cutoff uses `tail`.
///
/// Scott-openness pins the class down: if any threshold is a natural, every
/// column at or beyond the least such threshold value must carry a natural
/// threshold. The class is closed under finite union (pointwise min) and
/// intersection (pointwise max) and supports exact membership, emptiness and
/// inclusion tests, which is all of Section-3 machinery.
class JOpen {
public:
  using Thresh = std::optional<std::uint32_t>;  // nullopt = Excluded

  static JOpen empty() { return JOpen({}, std::nullopt); }
  static JOpen full() { return JOpen({}, 0); }

  static JOpen make(std::map<std::uint32_t, Thresh> overrides, Thresh tail) {
    JOpen u(std::move(overrides), tail);
    u.validate();
    return u;
  }

  const std::map<std::uint32_t, Thresh>& overrides() const { return overrides_; }
  Thresh tail() const { return tail_; }
  std::uint32_t cutoff() const {
    return overrides_.empty() ? 0 : overrides_.rbegin()->first + 1;
  }

  Thresh threshold(std::uint32_t column) const {
    auto it = overrides_.find(column);
    return it == overrides_.end() ? tail_ : it->second;
  }

  bool member(const JPoint& p) const {
    Thresh t = threshold(p.column);
    if (!t) return false;
    return p.maximal() || *t <= *p.height;
  }

  bool is_empty() const {
    if (tail_) return false;
    for (const auto& [c, t] : overrides_)
      if (t) return false;
    return true;
  }

  friend JOpen j_union(const JOpen& a, const JOpen& b) { return merge(a, b, /*take_min=*/true); }
  friend JOpen j_intersect(const JOpen& a, const JOpen& b) { return merge(a, b, false); }

  /// U subset V iff V's threshold is at most U's in every column (Excluded = +inf).
  friend bool j_subset(const JOpen& u, const JOpen& v) {
    auto leq_at = [&](std::uint32_t col) {
      Thresh tu = u.threshold(col), tv = v.threshold(col);
      if (!tu) return true;       // column empty in u
      if (!tv) return false;      // u has points there, v has none
      return *tv <= *tu;
    };
    for (const auto& [c, t] : u.overrides_)
      if (!leq_at(c)) return false;
    for (const auto& [c, t] : v.overrides_)
      if (!leq_at(c)) return false;
    // tail vs tail
    if (u.tail_ && (!v.tail_ || *v.tail_ > *u.tail_)) return false;
    return true;
  }

  friend bool operator==(const JOpen& a, const JOpen& b) {
    return a.tail_ == b.tail_ && a.overrides_ == b.overrides_;
  }

  friend bool canonical_less(const JOpen& a, const JOpen& b) {
    if (a.tail_ != b.tail_) return thresh_less(a.tail_, b.tail_);
    auto ia = a.overrides_.begin(), ib = b.overrides_.begin();
    for (; ia != a.overrides_.end() && ib != b.overrides_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first < ib->first;
      if (ia->second != ib->second) return thresh_less(ia->second, ib->second);
    }
    return ia == a.overrides_.end() && ib != b.overrides_.end();
  }

  /// Trace on the maximal points M, reading M as N_cof.
  NcofOpen trace() const {
    if (is_empty()) return NcofOpen::empty();
    std::vector<std::uint64_t> excluded;
    for (const auto& [c, t] : overrides_)
      if (!t) excluded.push_back(c);
    return NcofOpen::cofinite(std::move(excluded));
  }

  /// Least member in the canonical enumeration of J: diagonal order on
  /// (column, height) over the finite points. Nonempty opens always contain a
  /// finite point.
  JPoint least_member() const {
    require(!is_empty(), "empty-open", "least member of the empty open");
    std::uint32_t bound = 2 * (cutoff() + 2);
    for (const auto& [c, t] : overrides_)
      if (t) bound = std::max(bound, c + *t + 1);
    if (tail_) bound = std::max(bound, cutoff() + *tail_ + 1);
    for (std::uint32_t d = 0; d <= bound; ++d)
      for (std::uint32_t n = 0; n <= d; ++n)
        if (member(jpoint(n, d - n))) return jpoint(n, d - n);
    fail("internal-invariant", "nonempty JOpen without small finite member");
  }

  std::string to_string() const {
    std::string s = "J{";
    for (const auto& [c, t] : overrides_)
      s += std::to_string(c) + ":" + (t ? std::to_string(*t) : "x") + " ";
    s += "tail:" + std::string(tail_ ? std::to_string(*tail_) : "x") + "}";
    return s;
  }

private:
  JOpen(std::map<std::uint32_t, Thresh> overrides, Thresh tail)
      : overrides_(std::move(overrides)), tail_(tail) {
    canonicalize();
  }

  void canonicalize() {
    for (auto it = overrides_.begin(); it != overrides_.end();)
      it = (it->second == tail_) ? overrides_.erase(it) : ++it;
  }

  void validate() const {
    std::optional<std::uint32_t> m0;  // least natural threshold anywhere
    if (tail_) m0 = *tail_;
    for (const auto& [c, t] : overrides_)
      if (t && (!m0 || *t < *m0)) m0 = *t;
    if (!m0) return;  // all columns excluded: the empty open
    require(tail_.has_value(), "invalid-jopen",
            "a finite point forces cofinitely many columns to be inhabited");
    for (const auto& [c, t] : overrides_)
      if (c >= *m0)
        require(t.has_value(), "invalid-jopen",
                "column " + std::to_string(c) + " >= least threshold " + std::to_string(*m0) +
                    " must have a natural threshold");
  }

  static bool thresh_less(const Thresh& a, const Thresh& b) {
    if (a.has_value() != b.has_value()) return a.has_value();  // naturals before Excluded
    if (!a) return false;
    return *a < *b;
  }

  static JOpen merge(const JOpen& a, const JOpen& b, bool take_min) {
    auto comb = [&](Thresh x, Thresh y) -> Thresh {
      if (take_min) {  // union: Excluded is the top threshold
        if (!x) return y;
        if (!y) return x;
        return std::min(*x, *y);
      }
      if (!x || !y) return std::nullopt;  // intersection
      return std::max(*x, *y);
    };
    std::map<std::uint32_t, Thresh> ov;
    for (const auto& [c, t] : a.overrides_) ov[c] = comb(t, b.threshold(c));
    for (const auto& [c, t] : b.overrides_)
      if (!ov.count(c)) ov[c] = comb(a.threshold(c), t);
    JOpen out(std::move(ov), comb(a.tail_, b.tail_));
    out.validate();  // closure under union/intersection preserves the invariant
    return out;
  }

  std::map<std::uint32_t, Thresh> overrides_;
  Thresh tail_;
};

/// The canonical Scott open generated by a finite-height point a = (n, m):
/// column n from height m, together with every point of level >= m.
inline JOpen j_up_point(const JPoint& a) {
  require(!a.maximal(), "maximal-point-input",
          "no canonical least Scott open around a maximal point");
  std::map<std::uint32_t, JOpen::Thresh> ov;
  for (std::uint32_t c = 0; c < *a.height; ++c) ov[c] = std::nullopt;
  ov[a.column] = *a.height;
  return JOpen::make(std::move(ov), *a.height);
}

/// up L_i: all finite points of height >= i plus every maximal point.
inline JOpen j_up_level(std::uint32_t i) { return JOpen::make({}, i); }

/// U_k = J minus the downset of D_k (the first k+1 columns): finite points
/// with column > k and height > k, maximal points with column > k.
inline JOpen j_u_k(std::uint32_t k) {
  std::map<std::uint32_t, JOpen::Thresh> ov;
  for (std::uint32_t c = 0; c <= k; ++c) ov[c] = std::nullopt;
  return JOpen::make(std::move(ov), k + 1);
}

/// The largest Scott open U_W of J whose trace on the maximal points is W.
inline JOpen j_largest_open_for_trace(const NcofOpen& w) {
  if (w.is_empty()) return JOpen::empty();
  const auto& excluded = w.excluded();
  if (excluded.empty()) return JOpen::full();
  std::map<std::uint32_t, JOpen::Thresh> ov;
  for (auto i : excluded) ov[static_cast<std::uint32_t>(i)] = std::nullopt;
  std::uint32_t h = static_cast<std::uint32_t>(excluded.back());
  return JOpen::make(std::move(ov), h + 1);
}

} // namespace crescent
