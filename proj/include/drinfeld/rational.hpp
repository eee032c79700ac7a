#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace drinfeld {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt ipow(const BigInt& base, std::uint64_t exponent);
Rational rpow(const Rational& base, std::int64_t exponent);

/// `num/den` in lowest terms; the denominator is always written, even when 1.
std::string to_fraction_string(const Rational& r);
/// Accepts `num/den` or a bare integer. Result is canonicalized.
Rational parse_fraction(std::string_view text);

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
std::string to_decimal(const Rational& r, unsigned digits = 12);

double to_double(const Rational& r);

std::string to_string(const BigInt& n);

}  // namespace drinfeld
