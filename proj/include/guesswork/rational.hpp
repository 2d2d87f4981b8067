#pragma once

// Exact rational arithmetic on top of GMP, plus the decimal text formats used
// throughout the library.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "guesswork/error.hpp"

namespace guesswork {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact value of a binary floating-point number. Note that 0.1 as a double
/// is 3602879701896397/36028797018963968, not 1/10.
inline Rational from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::Parse, "non-finite floating-point value");
  }
  Rational r(value);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

/// Parses a decimal literal ("0.3", "-1.25e-2", "7") or a rational literal
/// ("3/7") into an exact rational. Decimals are never rounded.
inline Rational parse_rational(std::string_view token) {
  auto fail = [&]() -> Error {
    return Error(ErrorCode::Parse, "malformed number '" + std::string(token) + "'");
  };
  if (token.empty()) throw fail();

  if (auto slash = token.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(token.substr(0, slash));
    Rational den = parse_rational(token.substr(slash + 1));
    if (den == 0) throw fail();
    Rational r = num / den;
    r.canonicalize();
    return r;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (token[pos] == '+' || token[pos] == '-') {
    negative = token[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;  // value = digits * 10^(-scale)
  bool any_digit = false;
  while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) {
    digits += token[pos++];
    any_digit = true;
  }
  if (pos < token.size() && token[pos] == '.') {
    ++pos;
    while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) {
      digits += token[pos++];
      ++scale;
      any_digit = true;
    }
  }
  if (!any_digit) throw fail();
  if (pos < token.size() && (token[pos] == 'e' || token[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
      exp_negative = token[pos] == '-';
      ++pos;
    }
    std::string exp_digits;
    while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) {
      exp_digits += token[pos++];
    }
    if (exp_digits.empty() || exp_digits.size() > 6) throw fail();
    long exponent = std::stol(exp_digits);
    scale += exp_negative ? exponent : -exponent;
  }
  if (pos != token.size()) throw fail();

  Integer numerator(digits, 10);
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational r = scale >= 0 ? Rational(numerator, power) : Rational(numerator * power);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

namespace detail {

// Strips all factors of `prime` from `value`; returns how many were removed.
inline unsigned long strip_factor(Integer& value, unsigned long prime) {
  unsigned long count = 0;
  while (mpz_divisible_ui_p(value.get_mpz_t(), prime)) {
    mpz_divexact_ui(value.get_mpz_t(), value.get_mpz_t(), prime);
    ++count;
  }
  return count;
}

// Formats |numerator| / 10^scale as a plain decimal, trimming trailing zeros.
inline std::string format_scaled(const Integer& scaled, unsigned long scale, bool negative) {
  std::string digits = Integer(abs(scaled)).get_str();
  if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
  std::string out = digits.substr(0, digits.size() - scale);
  std::string frac = digits.substr(digits.size() - scale);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  if (negative && out != "0") out.insert(0, "-");
  return out;
}

}  // namespace detail

/// Exact text form: a terminating decimal when the denominator is 2^a*5^b,
/// otherwise "num/den".
inline std::string to_string(const Rational& value) {
  Integer den = value.get_den();
  const unsigned long twos = detail::strip_factor(den, 2);
  const unsigned long fives = detail::strip_factor(den, 5);
  if (den != 1) return value.get_num().get_str() + "/" + value.get_den().get_str();

  const unsigned long scale = std::max(twos, fives);
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, scale);
  Integer scaled = value.get_num() * power / value.get_den();
  return detail::format_scaled(scaled, scale, value < 0);
}

/// Decimal rendering rounded (half away from zero) to `significant` digits,
/// in fixed notation with trailing zeros removed.
inline std::string to_decimal(const Rational& value, int significant = 12) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  Rational magnitude = abs(value);

  // Find the decimal exponent e with 10^e <= magnitude < 10^(e+1).
  long exponent = 0;
  {
    Integer int_part = magnitude.get_num() / magnitude.get_den();
    if (int_part > 0) {
      exponent = static_cast<long>(int_part.get_str().size()) - 1;
    } else {
      Rational scaled = magnitude;
      while (scaled < 1) {
        scaled *= 10;
        --exponent;
      }
    }
  }
  const long scale = significant - 1 - exponent;
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational shifted = scale >= 0 ? Rational(magnitude * power) : Rational(magnitude / power);
  Integer twice = shifted.get_num() * 2 + shifted.get_den();
  Integer rounded = twice / (shifted.get_den() * 2);
  if (scale >= 0) return detail::format_scaled(rounded, static_cast<unsigned long>(scale), negative);
  return (negative ? "-" : "") + Integer(rounded * power).get_str();
}

}  // namespace guesswork
