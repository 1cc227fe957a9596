// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace crescent {

/// Domain error carrying a stable machine-readable kind
/// (e.g. "variant-mismatch", "unbounded-restriction").
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

} // namespace crescent
