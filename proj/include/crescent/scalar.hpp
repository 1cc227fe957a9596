// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <string>

#include "crescent/error.hpp"

namespace crescent {

// Plain value types (no expression templates), so ternaries and std::min/max
// behave like they do for builtins.
using Int = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline std::string rat_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses "p", "-p" or "p/q". Throws parse-error on anything else.
inline Rat parse_rat(const std::string& s) {
  auto bad = [&]() -> Rat { fail("parse-error", "not a rational: '" + s + "'"); };
  if (s.empty()) return bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) return bad();
    return Rat(num, den);
  } catch (const std::exception&) {
    return bad();
  }
}

/// Exact nonnegative rational extended with +infinity: the value space of all
/// valuations. Addition and multiplication are total, with the measure-theoretic
/// convention 0 * inf = 0. Subtraction requires a finite subtrahend not larger
/// than the minuend; violations signal corrupted state (internal-invariant).
class Scalar {
public:
  Scalar() : inf_(false), v_(0) {}

  Scalar(Rat v) : inf_(false), v_(std::move(v)) {
    require(v_ >= 0, "negative-scalar", "Scalar must be nonnegative: " + rat_to_string(v_));
  }

  Scalar(int v) : Scalar(Rat(v)) {}

  static Scalar infinity() {
    Scalar s;
    s.inf_ = true;
    return s;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }

  const Rat& finite_value() const {
    require(!inf_, "infinite-value", "finite value requested from infinity");
    return v_;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.inf_ || b.inf_) return infinity();
    return Scalar(a.v_ + b.v_);
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();  // 0 * inf = 0
    if (a.inf_ || b.inf_) return infinity();
    return Scalar(a.v_ * b.v_);
  }

  /// Partial: b must be finite and b <= a; inf - finite = inf.
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    require(b.is_finite(), "internal-invariant", "subtraction of an infinite value");
    if (a.inf_) return infinity();
    require(b.v_ <= a.v_, "internal-invariant",
            "scalar underflow: " + a.to_string() + " - " + b.to_string());
    return Scalar(a.v_ - b.v_);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return a == b || a < b; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return b <= a; }

  std::string to_string() const { return inf_ ? "inf" : rat_to_string(v_); }

  static Scalar from_string(const std::string& s) {
    if (s == "inf") return infinity();
    return Scalar(parse_rat(s));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

private:
  bool inf_;
  Rat v_;
};

} // namespace crescent
