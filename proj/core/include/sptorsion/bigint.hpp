#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace sptorsion {

/// Arbitrary-precision integer used for every order, count, and matrix entry.
using BigInt = boost::multiprecision::mpz_int;

std::string to_decimal(const BigInt& value);

/// Parses an optionally signed decimal integer. Throws DomainError on any
/// other character, including surrounding whitespace.
BigInt parse_decimal(std::string_view text);

/// Natural logarithm of a positive integer, accurate to a few ulps even when
/// the value is far outside the range of double.
double log_of(const BigInt& value);

/// Ratio num/den as a double for positive operands of any size. Only the
/// leading 64 bits of each operand participate, so the relative error is
/// below 2^-60 before the final rounding.
double ratio_to_double(const BigInt& num, const BigInt& den);

BigInt pow_u64(std::uint64_t base, unsigned exponent);

}  // namespace sptorsion
