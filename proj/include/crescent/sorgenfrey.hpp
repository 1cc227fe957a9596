// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "crescent/error.hpp"
#include "crescent/scalar.hpp"

namespace crescent {

/// Half-open rational interval [a, b[.
struct RlInterval {
  Rat a, b;
  friend bool operator==(const RlInterval& x, const RlInterval& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// Open of the Sorgenfrey line presented exactly: a sorted list of pairwise
/// disjoint, non-adjacent half-open intervals [a, b[ with rational endpoints.
class RlOpen {
public:
  RlOpen() = default;

  static RlOpen normalize(std::vector<RlInterval> raw) {
    std::vector<RlInterval> kept;
    for (auto& iv : raw)
      if (iv.a < iv.b) kept.push_back(std::move(iv));
    std::sort(kept.begin(), kept.end(),
              [](const RlInterval& x, const RlInterval& y) { return x.a < y.a; });
    RlOpen out;
    for (auto& iv : kept) {
      if (!out.ivs_.empty() && iv.a <= out.ivs_.back().b)
        out.ivs_.back().b = std::max(out.ivs_.back().b, iv.b);
      else
        out.ivs_.push_back(std::move(iv));
    }
    return out;
  }

  static RlOpen interval(const Rat& a, const Rat& b) { return normalize({{a, b}}); }

  const std::vector<RlInterval>& intervals() const { return ivs_; }
  bool is_empty() const { return ivs_.empty(); }

  bool member(const Rat& x) const {
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), x,
                               [](const Rat& v, const RlInterval& iv) { return v < iv.a; });
    if (it == ivs_.begin()) return false;
    --it;
    return it->a <= x && x < it->b;
  }

  /// The interval of this open containing x, if any.
  const RlInterval* interval_of(const Rat& x) const {
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), x,
                               [](const Rat& v, const RlInterval& iv) { return v < iv.a; });
    if (it == ivs_.begin()) return nullptr;
    --it;
    return (it->a <= x && x < it->b) ? &*it : nullptr;
  }

  friend RlOpen rl_union(const RlOpen& u, const RlOpen& v) {
    std::vector<RlInterval> all = u.ivs_;
    all.insert(all.end(), v.ivs_.begin(), v.ivs_.end());
    return normalize(std::move(all));
  }

  friend RlOpen rl_intersect(const RlOpen& u, const RlOpen& v) {
    std::vector<RlInterval> out;
    std::size_t i = 0, j = 0;
    while (i < u.ivs_.size() && j < v.ivs_.size()) {
      const auto& x = u.ivs_[i];
      const auto& y = v.ivs_[j];
      Rat lo = std::max(x.a, y.a), hi = std::min(x.b, y.b);
      if (lo < hi) out.push_back({lo, hi});
      (x.b <= y.b ? i : j)++;
    }
    RlOpen r;
    r.ivs_ = std::move(out);  // already sorted disjoint non-adjacent
    return r;
  }

  friend RlOpen rl_difference(const RlOpen& u, const RlOpen& v) {
    std::vector<RlInterval> out;
    for (const auto& x : u.ivs_) {
      Rat lo = x.a;
      for (const auto& y : v.ivs_) {
        if (y.b <= lo) continue;
        if (y.a >= x.b) break;
        if (y.a > lo) out.push_back({lo, y.a});
        lo = std::max(lo, y.b);
        if (lo >= x.b) break;
      }
      if (lo < x.b) out.push_back({lo, x.b});
    }
    return normalize(std::move(out));
  }

  /// Intervals of a normalized open are separated by nonempty gaps, so a
  /// contiguous [a,b[ fits in a union iff it fits in a single interval.
  friend bool rl_subset(const RlOpen& u, const RlOpen& v) {
    for (const auto& x : u.ivs_) {
      const RlInterval* host = v.interval_of(x.a);
      if (!host || x.b > host->b) return false;
    }
    return true;
  }

  friend bool operator==(const RlOpen& u, const RlOpen& v) { return u.ivs_ == v.ivs_; }

  friend bool canonical_less(const RlOpen& u, const RlOpen& v) {
    return std::lexicographical_compare(
        u.ivs_.begin(), u.ivs_.end(), v.ivs_.begin(), v.ivs_.end(),
        [](const RlInterval& x, const RlInterval& y) {
          if (x.a != y.a) return x.a < y.a;
          return x.b < y.b;
        });
  }

  std::string to_string() const {
    if (ivs_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < ivs_.size(); ++i) {
      if (i) s += " u ";
      s += "[" + rat_to_string(ivs_[i].a) + "," + rat_to_string(ivs_[i].b) + "[";
    }
    return s;
  }

private:
  std::vector<RlInterval> ivs_;
};

/// Lebesgue measure of a finite union of half-open intervals, exactly.
inline Scalar lambda_eval(const RlOpen& u) {
  Rat total = 0;
  for (const auto& iv : u.intervals()) total += iv.b - iv.a;
  return Scalar(total);
}

/// Largest eps <= bound with [x, x+eps[ inside U's interval around x.
inline Rat shrink_interval(const Rat& x, const Rat& bound, const RlOpen& u) {
  require(bound > 0, "invalid-bound", "shrink bound must be positive");
  const RlInterval* host = u.interval_of(x);
  require(host != nullptr, "point-not-in-open", rat_to_string(x) + " not in " + u.to_string());
  return std::min(bound, host->b - x);
}

} // namespace crescent
