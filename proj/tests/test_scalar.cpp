// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "crescent/scalar.hpp"

using namespace crescent;

TEST_CASE("scalar arithmetic is exact") {
  Scalar a(Rat(1, 3)), b(Rat(1, 6));
  CHECK(a + b == Scalar(Rat(1, 2)));
  CHECK(a * b == Scalar(Rat(1, 18)));
  CHECK(a - b == Scalar(Rat(1, 6)));
  CHECK(Scalar(Rat(2, 4)) == Scalar(Rat(1, 2)));
}

TEST_CASE("infinity absorbs, except zero times infinity") {
  Scalar inf = Scalar::infinity();
  CHECK((inf + Scalar(3)).is_infinite());
  CHECK((Scalar(3) + inf).is_infinite());
  CHECK((inf * Scalar(Rat(1, 2))).is_infinite());
  CHECK(Scalar(0) * inf == Scalar(0));
  CHECK(inf * Scalar(0) == Scalar(0));
  CHECK((inf - Scalar(5)).is_infinite());
}

TEST_CASE("subtraction is partial") {
  CHECK_THROWS_AS(Scalar(1) - Scalar(2), Error);
  CHECK_THROWS_AS(Scalar(1) - Scalar::infinity(), Error);
  try {
    (void)(Scalar(1) - Scalar(2));
  } catch (const Error& e) {
    CHECK(e.kind() == "internal-invariant");
  }
}

TEST_CASE("scalars are totally ordered with infinity on top") {
  CHECK(Scalar(Rat(1, 2)) < Scalar(1));
  CHECK(Scalar(1) < Scalar::infinity());
  CHECK(Scalar::infinity() <= Scalar::infinity());
  CHECK(!(Scalar::infinity() < Scalar::infinity()));
}

TEST_CASE("string round trip uses p/q and inf") {
  CHECK(Scalar(Rat(3, 4)).to_string() == "3/4");
  CHECK(Scalar(7).to_string() == "7");
  CHECK(Scalar::infinity().to_string() == "inf");
  CHECK(Scalar::from_string("3/4") == Scalar(Rat(3, 4)));
  CHECK(Scalar::from_string("inf").is_infinite());
  CHECK_THROWS_AS(Scalar::from_string("x"), Error);
  CHECK_THROWS_AS(Scalar(Rat(-1, 2)), Error);
}
