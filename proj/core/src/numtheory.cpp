#include "sptorsion/numtheory.hpp"

#include <algorithm>
#include <string>

#include "sptorsion/errors.hpp"

namespace sptorsion::numtheory {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool fits_u64(const BigInt& v) {
  return v >= 0 && boost::multiprecision::msb(v) < 64;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization Factorization::from_entries(std::vector<PrimePower> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!is_prime(e.prime)) {
      throw DomainError("factorization entry " + std::to_string(e.prime) +
                        " is not prime");
    }
    if (e.exponent == 0) {
      throw DomainError("factorization exponents must be positive");
    }
    if (i > 0 && entries[i - 1].prime >= e.prime) {
      throw DomainError("factorization primes must be strictly ascending");
    }
  }
  return Factorization(std::move(entries));
}

unsigned Factorization::exponent_of(std::uint64_t p) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), p,
      [](const PrimePower& e, std::uint64_t q) { return e.prime < q; });
  return (it != entries_.end() && it->prime == p) ? it->exponent : 0;
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& e : entries_) v *= pow_u64(e.prime, e.exponent);
  return v;
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
  return up_to(x).size();
}

std::span<const std::uint64_t> PrimeTable::up_to(std::uint64_t x) const {
  if (x > limit_) {
    throw DomainError("prime table limit " + std::to_string(limit_) +
                      " is below the requested bound " + std::to_string(x));
  }
  auto end = std::upper_bound(primes_.begin(), primes_.end(), x);
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return PrimeTable(limit, std::move(primes));
}

Factorization factor(const BigInt& m) {
  if (m <= 0) throw DomainError("factor requires m >= 1");
  std::vector<PrimePower> entries;
  BigInt rest = m;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (boost::multiprecision::integer_modulus(rest, p) == 0) {
      rest /= p;
      ++e;
    }
    if (e != 0) entries.push_back({p, e});
  };
  strip(2);
  strip(3);
  // 6k +- 1 candidates; the primality shortcut reruns only after progress.
  bool recheck = true;
  for (std::uint64_t d = 5;; d += 6) {
    if (rest == 1) break;
    if (recheck && fits_u64(rest)) {
      const auto r = rest.convert_to<std::uint64_t>();
      if (is_prime(r)) {
        entries.push_back({r, 1});
        break;
      }
    }
    recheck = false;
    if (BigInt(d) * d > rest) {
      if (!fits_u64(rest)) {
        throw DomainError("cofactor " + rest.str() +
                          " exceeds the supported factorization range");
      }
      entries.push_back({rest.convert_to<std::uint64_t>(), 1});
      break;
    }
    const auto before = entries.size();
    strip(d);
    strip(d + 2);
    recheck = entries.size() != before;
  }
  return Factorization(std::move(entries));
}

Factorization factor_smooth(const BigInt& m,
                            std::span<const std::uint64_t> primes) {
  if (m <= 0) throw DomainError("factor requires m >= 1");
  std::vector<PrimePower> entries;
  BigInt rest = m;
  for (std::uint64_t p : primes) {
    if (rest == 1) break;
    unsigned e = 0;
    while (boost::multiprecision::integer_modulus(rest, p) == 0) {
      rest /= p;
      ++e;
    }
    if (e != 0) entries.push_back({p, e});
  }
  if (rest != 1) {
    throw DomainError(m.str() + " is not smooth over the supplied primes");
  }
  return Factorization(std::move(entries));
}

BigInt totient_prime_power(std::uint64_t p, unsigned exponent) {
  if (!is_prime(p)) {
    throw DomainError(std::to_string(p) + " is not prime");
  }
  if (exponent == 0) throw DomainError("totient exponent must be positive");
  return pow_u64(p, exponent - 1) * (p - 1);
}

BigInt totient(const Factorization& f) {
  BigInt t = 1;
  for (const auto& e : f.entries()) t *= totient_prime_power(e.prime, e.exponent);
  return t;
}

BigInt primorial(std::uint64_t x) {
  if (x < 2) throw DomainError("primorial requires x >= 2");
  BigInt product = 1;
  const auto table = sieve(x);
  for (std::uint64_t p : table.primes()) product *= p;
  return product;
}

}  // namespace sptorsion::numtheory
