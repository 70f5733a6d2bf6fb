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

#include "kmetric/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

#include "kmetric/error.hpp"

namespace kmetric {
namespace {

using boost::multiprecision::cpp_int;

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw Error(ErrorKind::Parse, "cannot parse rational '" + std::string(text) + "': " + why,
              {std::string(text)});
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// cpp_int reads a leading 0 as an octal prefix; decimal digits only here.
cpp_int decimal_int(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return digits.empty() ? cpp_int(0) : cpp_int(std::string(digits));
}

cpp_int pow10(long exponent) {
  cpp_int p = 1;
  for (long i = 0; i < exponent; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view whole, std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    bool neg = false;
    if (!exp_text.empty() && (exp_text[0] == '+' || exp_text[0] == '-')) {
      neg = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad(whole, "bad exponent");
    exponent = std::stol(std::string(exp_text));
    if (neg) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad(whole, "no digits");
  if (!int_part.empty() && !all_digits(int_part)) bad(whole, "bad integer part");
  if (!frac_part.empty() && !all_digits(frac_part)) bad(whole, "bad fraction part");

  std::string digits = std::string(int_part) + std::string(frac_part);
  cpp_int numerator = decimal_int(digits);
  exponent -= static_cast<long>(frac_part.size());
  if (exponent >= 0) return Rational(numerator * pow10(exponent));
  return Rational(numerator, pow10(-exponent));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text, "empty");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text, "bad fraction");
    cpp_int d = decimal_int(den);
    if (d == 0) bad(text, "zero denominator");
    value = Rational(decimal_int(num), d);
  } else {
    value = parse_decimal(text, s);
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  // cpp_rational is always normalised, so str() is already in lowest terms.
  return value.str();
}

Rational quantize(double value, int digits) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::Parse, "cannot quantize a non-finite value");
  }
  if (digits < 0 || digits > 30) {
    throw Error(ErrorKind::NonpositiveParameter, "quantization digits must be in [0, 30]");
  }
  // printf rounds the binary value correctly to the requested decimal digits.
  int size = std::snprintf(nullptr, 0, "%.*f", digits, value);
  std::vector<char> buffer(static_cast<std::size_t>(size) + 1);
  std::snprintf(buffer.data(), buffer.size(), "%.*f", digits, value);
  return parse_rational(std::string_view(buffer.data(), static_cast<std::size_t>(size)));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace kmetric
