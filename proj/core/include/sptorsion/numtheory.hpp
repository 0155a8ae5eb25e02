#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sptorsion/bigint.hpp"

namespace sptorsion::numtheory {

/// Deterministic primality test valid on the full 64-bit range.
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// m = p_1^a_1 ... p_k^a_k with p_1 < ... < p_k, every a_i >= 1. The empty
/// factorization represents 1.
class Factorization {
 public:
  Factorization() = default;

  /// Validates the entries (distinct ascending primes, positive exponents).
  static Factorization from_entries(std::vector<PrimePower> entries);

  const std::vector<PrimePower>& entries() const& { return entries_; }
  std::vector<PrimePower> entries() && { return std::move(entries_); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Exponent of p, or 0 when p does not divide the represented value.
  unsigned exponent_of(std::uint64_t p) const;

  BigInt value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  explicit Factorization(std::vector<PrimePower> entries)
      : entries_(std::move(entries)) {}

  std::vector<PrimePower> entries_;

  friend Factorization factor(const BigInt& m);
  friend Factorization factor_smooth(const BigInt& m,
                                     std::span<const std::uint64_t> primes);
};

/// All primes up to a limit, ascending.
class PrimeTable {
 public:
  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const& { return primes_; }
  std::vector<std::uint64_t> primes() && { return std::move(primes_); }

  /// pi(x) for x <= limit.
  std::size_t count_up_to(std::uint64_t x) const;

  /// Primes <= x, as a prefix view of the table. Requires x <= limit.
  std::span<const std::uint64_t> up_to(std::uint64_t x) const;

 private:
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;

  friend PrimeTable sieve(std::uint64_t limit);
};

/// Sieve of Eratosthenes. Throws DomainError for limit < 2.
PrimeTable sieve(std::uint64_t limit);

/// Trial-division factorization. Throws DomainError for m <= 0.
Factorization factor(const BigInt& m);

/// Factorization over a fixed prime set; throws DomainError when m has a
/// prime factor outside it. Used for values that are smooth by construction.
Factorization factor_smooth(const BigInt& m,
                            std::span<const std::uint64_t> primes);

/// phi(p^a) = p^(a-1) (p - 1). Throws DomainError when p is not prime or a = 0.
BigInt totient_prime_power(std::uint64_t p, unsigned exponent);

/// Euler's phi via the factorization.
BigInt totient(const Factorization& f);

/// Product of all primes <= x. Throws DomainError for x < 2.
BigInt primorial(std::uint64_t x);

}  // namespace sptorsion::numtheory
