// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "crescent/compact_candidate.hpp"
#include "crescent/error.hpp"
#include "crescent/scalar.hpp"
#include "crescent/sorgenfrey.hpp"

namespace crescent {

/// Countably many intervals anchored at a chain's points: [x_j, x_j + s/2^(j+1)[
/// for every index j >= start_index, where x_j is the chain's j-th generated
/// point. Total length has the exact closed form s / 2^start_index.
struct TailFamily {
  ChainRl chain;
  std::uint32_t start_index = 0;
  Rat s;  // budget parameter, > 0

  Rat interval_length(long j) const { return s * pow_rat(Rat(1, 2), j + 1); }

  Rat total_length() const { return s * pow_rat(Rat(1, 2), start_index); }

  bool member(const Rat& x) const {
    if (x <= chain.limit) return false;  // anchors sit strictly above the limit
    for (long j = start_index;; ++j) {
      Rat lo = chain.point(j);
      Rat hi = lo + interval_length(j);
      if (hi <= x) return false;  // hi is strictly decreasing: no later interval reaches x
      if (lo <= x) return true;   // lo <= x < hi
      require(j < kGeomIterLimit, "magnitude-limit", "tail membership exceeded iteration cap");
    }
  }

  void validate() const {
    chain.validate();
    require(chain.descending(), "invalid-tail", "tail families anchor descending chains");
    require(s > 0, "invalid-tail", "tail budget must be positive");
  }
};

/// Sorgenfrey open with a finite exact part plus geometric tails. Used only as
/// refuter output; carries a certified measure upper bound instead of an exact
/// measure.
struct CountableRlOpen {
  RlOpen finite_part;
  std::vector<TailFamily> tails;

  bool member(const Rat& x) const {
    if (finite_part.member(x)) return true;
    for (const auto& t : tails)
      if (t.member(x)) return true;
    return false;
  }

  void validate() const {
    for (const auto& t : tails) t.validate();
  }
};

/// lambda(finite part) + sum of closed-form geometric tail lengths: a sound
/// upper bound by countable subadditivity (exact when all pieces are disjoint).
inline Scalar measure_upper_bound(const CountableRlOpen& v) {
  Rat total = lambda_eval(v.finite_part).finite_value();
  for (const auto& t : v.tails) total += t.total_length();
  return Scalar(total);
}

} // namespace crescent
