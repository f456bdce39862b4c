#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace codmetric {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always held in lowest terms with a positive
/// denominator; every arithmetic operation and comparison is exact.
using Rational = boost::multiprecision::cpp_rational;

/// Shorthand constructor, mostly for literals in tests and samplers.
inline Rational rat(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

/// Parses "p/q" or a plain integer string. Signs only on the numerator.
Rational parse_rational(const std::string& text);

/// Canonical rendering: "p/q", or just "p" for integers. Round-trips
/// through parse_rational.
std::string rational_to_string(const Rational& r);

/// Decimal rendering for display, truncated toward zero after `digits`
/// fractional digits. Never used in comparisons.
std::string rational_to_decimal(const Rational& r, unsigned digits = 9);

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// 2^{-k} as an exact rational.
inline Rational pow2_inv(std::uint64_t k) {
    return Rational(BigInt(1), BigInt(1) << k);
}

} // namespace codmetric
