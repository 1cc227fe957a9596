// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crescent/error.hpp"

namespace crescent {

/// Open of N_cof, the naturals with the co-finite topology: either empty or
/// the complement of a finite excluded set.
class NcofOpen {
public:
  static NcofOpen empty() { return NcofOpen(); }

  static NcofOpen cofinite(std::vector<std::uint64_t> excluded) {
    NcofOpen u;
    std::sort(excluded.begin(), excluded.end());
    excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
    u.excluded_ = std::move(excluded);
    return u;
  }

  static NcofOpen full() { return cofinite({}); }

  bool is_empty() const { return !excluded_.has_value(); }
  bool is_cofinite() const { return excluded_.has_value(); }

  const std::vector<std::uint64_t>& excluded() const {
    require(excluded_.has_value(), "internal-invariant", "empty NcofOpen has no excluded set");
    return *excluded_;
  }

  bool member(std::uint64_t n) const {
    if (is_empty()) return false;
    return !std::binary_search(excluded_->begin(), excluded_->end(), n);
  }

  friend NcofOpen ncof_union(const NcofOpen& a, const NcofOpen& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    std::vector<std::uint64_t> out;
    std::set_intersection(a.excluded_->begin(), a.excluded_->end(), b.excluded_->begin(),
                          b.excluded_->end(), std::back_inserter(out));
    return cofinite(std::move(out));
  }

  friend NcofOpen ncof_intersect(const NcofOpen& a, const NcofOpen& b) {
    if (a.is_empty() || b.is_empty()) return empty();
    std::vector<std::uint64_t> out;
    std::set_union(a.excluded_->begin(), a.excluded_->end(), b.excluded_->begin(),
                   b.excluded_->end(), std::back_inserter(out));
    return cofinite(std::move(out));
  }

  friend bool ncof_subset(const NcofOpen& a, const NcofOpen& b) {
    if (a.is_empty()) return true;
    if (b.is_empty()) return false;
    return std::includes(a.excluded_->begin(), a.excluded_->end(), b.excluded_->begin(),
                         b.excluded_->end());
  }

  friend bool operator==(const NcofOpen& a, const NcofOpen& b) {
    return a.excluded_ == b.excluded_;
  }

  /// Canonical order: empty first, then by excluded set (shortlex).
  friend bool canonical_less(const NcofOpen& a, const NcofOpen& b) {
    if (a.is_empty() != b.is_empty()) return a.is_empty();
    if (a.is_empty()) return false;
    if (a.excluded_->size() != b.excluded_->size())
      return a.excluded_->size() < b.excluded_->size();
    return *a.excluded_ < *b.excluded_;
  }

  std::string to_string() const {
    if (is_empty()) return "{}";
    std::string s = "N \\ {";
    for (std::size_t i = 0; i < excluded_->size(); ++i) {
      if (i) s += ",";
      s += std::to_string((*excluded_)[i]);
    }
    return s + "}";
  }

private:
  NcofOpen() = default;
  std::optional<std::vector<std::uint64_t>> excluded_;  // nullopt = empty set
};

} // namespace crescent
