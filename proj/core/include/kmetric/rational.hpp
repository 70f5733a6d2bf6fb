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

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kmetric {

/// Exact distance values. Equality must be decidable, so no floating point.
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultQuantizationDigits = 12;

/// Parses "7", "-3/2", "0.125", "1.5e-3". Throws Error(Parse) on bad input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms text: "3/2", "-4", "0".
std::string format_rational(const Rational& value);

/// Rounds `value` to `digits` decimal places and returns it exactly.
Rational quantize(double value, int digits = kDefaultQuantizationDigits);

/// Nearest double; only for display and heuristics, never for comparisons.
double to_double(const Rational& value);

}  // namespace kmetric
