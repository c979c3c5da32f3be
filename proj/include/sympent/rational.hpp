// Copyright 2026 The sympent Authors.
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

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "sympent/errors.hpp"

namespace sympent {

/// Arbitrary-precision integer and rational scalar types. cpp_rational keeps
/// values normalized (reduced fraction, positive denominator), which the rest
/// of the library relies on for exact equality tests.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A point of the parameter plane with exact rational coordinates.
struct RationalPoint2 {
  Rational x;
  Rational y;

  friend bool operator==(const RationalPoint2& a, const RationalPoint2& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const RationalPoint2& a, const RationalPoint2& b) {
    return !(a == b);
  }

  RationalPoint2 swapped() const { return {y, x}; }
};

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

/// Renders a rational as "num" or "num/den" in lowest terms.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) {
    s += "/" + den.str();
  }
  return s;
}

/// Converts a double to the rational it represents exactly. Finite doubles
/// are dyadic rationals, so no precision is lost.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw Error("cannot convert non-finite double to rational");
  }
  return Rational(x);
}

/// Result of parsing a scalar given on the command line or in a config value.
struct ParsedRational {
  Rational value;
  /// True when the input was a decimal literal, converted exactly from its
  /// binary double value rather than its printed base-10 digits.
  bool from_decimal = false;
};

namespace detail {

inline bool parse_integer(std::string_view s, BigInt* out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') return false;
  }
  *out = BigInt(std::string(s));
  return true;
}

}  // namespace detail

/// Parses "3", "-1/9", or a decimal such as "0.12". Decimals are converted
/// exactly from the binary value of the parsed double; callers should surface
/// ParsedRational::from_decimal as a warning where exactness matters.
inline std::optional<ParsedRational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num, den;
    if (!detail::parse_integer(text.substr(0, slash), &num)) return std::nullopt;
    if (!detail::parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return ParsedRational{Rational(num, den), false};
  }
  BigInt whole;
  if (detail::parse_integer(text, &whole)) {
    return ParsedRational{Rational(whole), false};
  }
  try {
    std::size_t used = 0;
    const std::string owned(text);
    const double value = std::stod(owned, &used);
    if (used != owned.size() || !std::isfinite(value)) return std::nullopt;
    return ParsedRational{rational_from_double(value), true};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace sympent
