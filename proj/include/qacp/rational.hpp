#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace qacp {

/// Exact arbitrary-precision rational. Always kept in lowest terms with a
/// positive denominator; every arithmetic operation is exact.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Serializes as "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& r);

/// Parses "p", "-p", "p/q". Returns nullopt on syntax errors or q = 0.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace qacp
