#include "platoon/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace platoon {

namespace {

BigInt pow10(int exponent) {
  BigInt result = 1;
  for (int i = 0; i < exponent; ++i) result *= 10;
  return result;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_number(whole);
  BigInt value = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(whole);
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_number(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(s.substr(0, slash), text);
    BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) bad_number(text);
    return Rational(num, den);
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    BigInt exp = parse_integer(s.substr(e + 1), text);
    if (exp > 1000 || exp < -1000) bad_number(text);
    exponent = exp.convert_to<int>();
    s = s.substr(0, e);
  }

  BigInt mantissa = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) bad_number(text);
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else {
      bad_number(text);
    }
  }
  if (!seen_digit) bad_number(text);

  Rational value(mantissa, pow10(frac_digits));
  if (exponent > 0) value *= pow10(exponent);
  if (exponent < 0) value /= pow10(-exponent);
  return negative ? -value : value;
}

std::string format_fixed(const Rational& value, int precision) {
  if (precision < 0) throw std::invalid_argument("precision must be nonnegative");
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  const BigInt scale = pow10(precision);
  const BigInt num = numerator(magnitude) * scale;
  const BigInt den = denominator(magnitude);
  BigInt scaled = num / den;
  if ((num % den) * 2 >= den) ++scaled;

  const BigInt whole = scaled / scale;
  std::string digits = whole.str();
  std::string out = (negative && scaled != 0) ? "-" + digits : digits;
  if (precision > 0) {
    const BigInt remainder = scaled % scale;
    std::string frac = remainder.str();
    out += '.';
    out.append(precision - frac.size(), '0');
    out += frac;
  }
  return out;
}

std::string format_fraction(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace platoon
