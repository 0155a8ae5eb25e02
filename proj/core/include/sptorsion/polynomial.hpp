#pragma once

#include <cstdint>
#include <vector>

#include "sptorsion/bigint.hpp"
#include "sptorsion/matrix.hpp"

namespace sptorsion {

/// Integer polynomial, coefficient i multiplies x^i. No trailing zeros
/// except for the zero polynomial, which is empty.
using Polynomial = std::vector<BigInt>;

/// Exact quotient num / den for a monic den. Throws InternalError when the
/// division leaves a remainder.
Polynomial divide_exact(const Polynomial& num, const Polynomial& den);

/// n-th cyclotomic polynomial, obtained from x^n - 1 by dividing out the
/// cyclotomic factors of every proper divisor of n.
Polynomial cyclotomic(std::uint64_t n);

/// Companion matrix: ones on the subdiagonal, last column -c_0 .. -c_{d-1}.
/// Throws DomainError unless the polynomial is monic of degree >= 1.
IntMatrix companion(const Polynomial& monic);

}  // namespace sptorsion
