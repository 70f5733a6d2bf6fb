// Copyright 2026 The kmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <catch_amalgamated.hpp>

#include <cmath>

#include "kmetric/error.hpp"
#include "kmetric/rational.hpp"

using kmetric::Error;
using kmetric::ErrorKind;
using kmetric::Rational;

TEST_CASE("parse_rational accepts integers, fractions and decimals", "[rational]") {
  CHECK(kmetric::parse_rational("7") == Rational(7));
  CHECK(kmetric::parse_rational("-3/2") == Rational(-3, 2));
  CHECK(kmetric::parse_rational("6/4") == Rational(3, 2));
  CHECK(kmetric::parse_rational("0.125") == Rational(1, 8));
  CHECK(kmetric::parse_rational("1.5e-3") == Rational(3, 2000));
  CHECK(kmetric::parse_rational("2E2") == Rational(200));
  CHECK(kmetric::parse_rational("010/03") == Rational(10, 3));
  CHECK(kmetric::parse_rational("007.50") == Rational(15, 2));
}

TEST_CASE("parse_rational rejects malformed text", "[rational]") {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "3/x"}) {
    INFO(bad);
    try {
      (void)kmetric::parse_rational(bad);
      FAIL("accepted malformed input");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
  }
}

TEST_CASE("format_rational writes lowest terms", "[rational]") {
  CHECK(kmetric::format_rational(Rational(6, 4)) == "3/2");
  CHECK(kmetric::format_rational(Rational(-4)) == "-4");
  CHECK(kmetric::format_rational(Rational(0)) == "0");
  CHECK(kmetric::parse_rational(kmetric::format_rational(Rational(22, 7))) == Rational(22, 7));
}

TEST_CASE("quantize rounds to the requested decimal places exactly", "[rational]") {
  CHECK(kmetric::quantize(0.1, 12) == Rational(1, 10));
  CHECK(kmetric::quantize(1.0 / 3.0, 3) == Rational(333, 1000));
  CHECK(kmetric::quantize(2.0) == Rational(2));
  // Equal doubles always quantize to equal rationals.
  CHECK(kmetric::quantize(std::sqrt(2.0)) == kmetric::quantize(std::sqrt(2.0)));
  CHECK_THROWS_AS(kmetric::quantize(std::nan("")), Error);
  CHECK(kmetric::to_double(Rational(1, 4)) == 0.25);
}
