#include "sptorsion/bigint.hpp"

#include <cmath>
#include <numbers>

#include "sptorsion/errors.hpp"

namespace sptorsion {

namespace {

// Leading (up to) 64 bits of |value| together with the shift applied.
std::pair<double, long> leading_bits(const BigInt& value) {
  const auto bits = static_cast<long>(boost::multiprecision::msb(value)) + 1;
  const long shift = bits > 64 ? bits - 64 : 0;
  const BigInt top = value >> shift;
  return {static_cast<double>(top.convert_to<std::uint64_t>()), shift};
}

}  // namespace

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) {
    throw DomainError("not a decimal integer: '" + std::string(text) + "'");
  }
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw DomainError("not a decimal integer: '" + std::string(text) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return BigInt(digits);
}

double log_of(const BigInt& value) {
  if (value <= 0) throw DomainError("log_of requires a positive integer");
  const auto [top, shift] = leading_bits(value);
  return std::log(top) + static_cast<double>(shift) * std::numbers::ln2;
}

double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (num <= 0 || den <= 0) {
    throw DomainError("ratio_to_double requires positive operands");
  }
  const auto [ntop, nshift] = leading_bits(num);
  const auto [dtop, dshift] = leading_bits(den);
  return std::ldexp(ntop / dtop, static_cast<int>(nshift - dshift));
}

BigInt pow_u64(std::uint64_t base, unsigned exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

}  // namespace sptorsion
