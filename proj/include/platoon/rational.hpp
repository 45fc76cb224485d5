#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace platoon {

// All money-rate values are exact rationals. Decimal inputs such as 0.048
// are representable exactly, so equality checks across independent
// computation routes need no tolerance.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts plain integers ("3"), decimals with optional exponent
// ("0.048", "-1.2e-3"), and fraction form ("48/1000").
Rational parse_rational(std::string_view text);

// Fixed-point rendering with `precision` digits after the point, rounded
// half away from zero. Locale-free: always '.' as separator.
std::string format_fixed(const Rational& value, int precision);

// Canonical "p/q" form; plain "p" when the denominator is 1.
std::string format_fraction(const Rational& value);

double to_double(const Rational& value);

}  // namespace platoon
