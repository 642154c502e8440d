#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace geocycle {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic everywhere; no floating point in any computation
// or persisted artifact.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", plain integers, and decimal strings ("0.25" becomes 1/4 exactly).
Rational parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" fully reduced.
std::string format_rational(const Rational& value);

Rational rational_abs(const Rational& value);

// 2^-k as an exact rational, k >= 0.
Rational pow2_inverse(unsigned k);

}  // namespace geocycle
