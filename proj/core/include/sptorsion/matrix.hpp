#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sptorsion/bigint.hpp"

namespace sptorsion {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<BigInt>& entries() const { return entries_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  IntMatrix transpose() const;
  bool is_identity() const;
  bool is_zero() const;

  IntMatrix operator-() const;
  IntMatrix& operator+=(const IntMatrix& rhs);
  IntMatrix& operator-=(const IntMatrix& rhs);
  IntMatrix& operator*=(const BigInt& scalar);

  friend IntMatrix operator+(IntMatrix lhs, const IntMatrix& rhs) { return lhs += rhs; }
  friend IntMatrix operator-(IntMatrix lhs, const IntMatrix& rhs) { return lhs -= rhs; }
  friend IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntMatrix& m);

/// Determinant modulo a prime below 2^62.
std::uint64_t determinant_mod(const IntMatrix& m, std::uint64_t prime);

/// m^exponent by binary exponentiation, exponent >= 0.
IntMatrix power(const IntMatrix& m, const BigInt& exponent);

/// J = [[0, I], [-I, 0]] of size 2 * half.
IntMatrix standard_form(std::size_t half);

}  // namespace sptorsion
