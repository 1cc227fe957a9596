// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crescent/error.hpp"
#include "crescent/scalar.hpp"

namespace crescent {

inline constexpr long kGeomIterLimit = 200000;

/// Exact q^e for rational q > 0 and integer e (negative allowed).
inline Rat pow_rat(const Rat& q, long e) {
  require(q > 0, "internal-invariant", "pow_rat needs a positive base");
  Rat base = e >= 0 ? q : Rat(denominator(q), numerator(q));
  unsigned long n = static_cast<unsigned long>(e >= 0 ? e : -e);
  Rat acc = 1;
  while (n) {
    if (n & 1ul) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

/// The unique integer j with q^j == t, for 0 < q < 1 and t > 0, if it exists.
inline std::optional<long> pow_index(const Rat& q, const Rat& t) {
  require(q > 0 && q < 1, "internal-invariant", "pow_index needs 0 < q < 1");
  require(t > 0, "internal-invariant", "pow_index needs t > 0");
  if (t == 1) return 0;
  long j = 0;
  Rat p = 1;
  if (t < 1) {
    while (p > t) {
      p *= q;
      ++j;
      require(j < kGeomIterLimit, "magnitude-limit", "geometric solve exceeded iteration cap");
    }
    if (p == t) return j;
    return std::nullopt;
  }
  Rat inv(denominator(q), numerator(q));
  while (p < t) {
    p *= inv;
    --j;
    require(-j < kGeomIterLimit, "magnitude-limit", "geometric solve exceeded iteration cap");
  }
  if (p == t) return j;
  return std::nullopt;
}

/// Geometric rational chain: Descending denotes {limit + c*q^j : j in N},
/// strictly decreasing to `limit`; Ascending denotes {limit - c*q^j : j in N},
/// strictly increasing to it. Membership, subset and tail bounds are exactly
/// decidable on this closed form.
struct ChainRl {
  enum class Direction { descending, ascending };

  Rat limit;
  Rat coeff;  // c > 0
  Rat ratio;  // 0 < q < 1
  Direction dir = Direction::descending;
  bool include_limit = false;
  std::vector<Rat> prefix;  // finitely many extra points, sorted

  bool descending() const { return dir == Direction::descending; }

  Rat point(long j) const {
    Rat off = coeff * pow_rat(ratio, j);
    return descending() ? limit + off : limit - off;
  }

  /// Solves limit +- c*q^j = x over j in N.
  std::optional<long> generated_index(const Rat& x) const {
    Rat off = descending() ? x - limit : limit - x;
    if (off <= 0) return std::nullopt;
    auto j = pow_index(ratio, off / coeff);
    if (j && *j >= 0) return j;
    return std::nullopt;
  }

  bool member(const Rat& x) const {
    if (include_limit && x == limit) return true;
    if (std::binary_search(prefix.begin(), prefix.end(), x)) return true;
    return generated_index(x).has_value();
  }

  void validate() const {
    require(coeff > 0, "invalid-chain", "coefficient must be positive");
    require(ratio > 0 && ratio < 1, "invalid-chain", "ratio must satisfy 0 < q < 1");
    require(std::is_sorted(prefix.begin(), prefix.end()), "invalid-chain", "prefix not sorted");
    require(std::adjacent_find(prefix.begin(), prefix.end()) == prefix.end(), "invalid-chain",
            "duplicate prefix points");
    for (const auto& x : prefix)
      require(!generated_index(x).has_value(), "invalid-chain",
              "prefix point " + rat_to_string(x) + " collides with the generated sequence");
  }

  friend bool operator==(const ChainRl& a, const ChainRl& b) {
    return a.limit == b.limit && a.coeff == b.coeff && a.ratio == b.ratio && a.dir == b.dir &&
           a.include_limit == b.include_limit && a.prefix == b.prefix;
  }

  std::string to_string() const {
    std::string s = "{" + rat_to_string(limit) + (descending() ? " + " : " - ") +
                    rat_to_string(coeff) + "*" + rat_to_string(ratio) + "^j}";
    if (include_limit) s += " u {" + rat_to_string(limit) + "}";
    if (!prefix.empty()) s += " u prefix(" + std::to_string(prefix.size()) + ")";
    return s;
  }
};

struct FiniteBlock {
  std::vector<Rat> points;  // sorted, duplicate-free

  bool member(const Rat& x) const {
    return std::binary_search(points.begin(), points.end(), x);
  }

  void validate() const {
    require(std::is_sorted(points.begin(), points.end()), "invalid-block",
            "finite block not sorted");
    require(std::adjacent_find(points.begin(), points.end()) == points.end(), "invalid-block",
            "duplicate points in finite block");
  }

  friend bool operator==(const FiniteBlock& a, const FiniteBlock& b) {
    return a.points == b.points;
  }
};

using CompactBlock = std::variant<FiniteBlock, ChainRl>;

/// Finitely presented candidate for a compact subset of the Sorgenfrey line.
/// Blocks may overlap.
struct CompactCandidate {
  std::vector<CompactBlock> blocks;

  void validate() const {
    for (const auto& b : blocks)
      std::visit([](const auto& blk) { blk.validate(); }, b);
  }

  bool member(const Rat& x) const {
    for (const auto& b : blocks)
      if (std::visit([&](const auto& blk) { return blk.member(x); }, b)) return true;
    return false;
  }

  bool denotes_nonempty() const {
    for (const auto& b : blocks) {
      if (std::holds_alternative<ChainRl>(b)) return true;
      if (!std::get<FiniteBlock>(b).points.empty()) return true;
    }
    return false;
  }

  friend bool operator==(const CompactCandidate& a, const CompactCandidate& b) {
    return a.blocks == b.blocks;
  }
};

} // namespace crescent
