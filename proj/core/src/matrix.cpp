#include "sptorsion/matrix.hpp"

#include <string>
#include <utility>

#include "sptorsion/errors.hpp"

namespace sptorsion {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DomainError("matrix entry count " + std::to_string(entries_.size()) +
                      " does not match " + std::to_string(rows_) + "x" +
                      std::to_string(cols_));
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("ragged matrix literal");
    for (long long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : entries_) {
    if (v != 0) return false;
  }
  return true;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix n = *this;
  for (auto& v : n.entries_) v = -v;
  return n;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DomainError("matrix sum shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DomainError("matrix difference shape mismatch");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

IntMatrix& IntMatrix::operator*=(const BigInt& scalar) {
  for (auto& v : entries_) v *= scalar;
  return *this;
}

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw DomainError("matrix product shape mismatch");
  IntMatrix out(lhs.rows_, rhs.cols_);
  BigInt term;
  for (std::size_t r = 0; r < lhs.rows_; ++r) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const BigInt& a = lhs(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        const BigInt& b = rhs(k, c);
        if (b == 0) continue;
        term = a;
        term *= b;
        out(r, c) += term;
      }
    }
  }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::uint64_t determinant_mod(const IntMatrix& m, std::uint64_t prime) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  using u128 = unsigned __int128;
  const std::size_t n = m.rows();
  std::vector<std::uint64_t> a(n * n);
  const BigInt p = prime;
  for (std::size_t i = 0; i < n * n; ++i) {
    BigInt r = m.entries()[i] % p;
    if (r < 0) r += p;
    a[i] = r.convert_to<std::uint64_t>();
  }
  auto mul = [prime](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<u128>(x) * y % prime);
  };
  auto inverse = [&](std::uint64_t x) {
    std::uint64_t result = 1;
    std::uint64_t e = prime - 2;
    while (e != 0) {
      if (e & 1U) result = mul(result, x);
      x = mul(x, x);
      e >>= 1U;
    }
    return result;
  };
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot * n + k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[pivot * n + c]);
      det = prime - det;
    }
    det = mul(det, a[k * n + k]);
    const std::uint64_t inv = inverse(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t factor = mul(a[i * n + k], inv);
      if (factor == 0) continue;
      for (std::size_t c = k; c < n; ++c) {
        a[i * n + c] = (a[i * n + c] + prime - mul(factor, a[k * n + c])) % prime;
      }
    }
  }
  return det % prime;
}

IntMatrix power(const IntMatrix& m, const BigInt& exponent) {
  if (!m.is_square()) throw DomainError("power of a non-square matrix");
  if (exponent < 0) throw DomainError("negative matrix exponent");
  IntMatrix result = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  BigInt e = exponent;
  while (e != 0) {
    if (boost::multiprecision::bit_test(e, 0)) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

IntMatrix standard_form(std::size_t half) {
  IntMatrix j(2 * half, 2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    j(i, half + i) = 1;
    j(half + i, i) = -1;
  }
  return j;
}

}  // namespace sptorsion
