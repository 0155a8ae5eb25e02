#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "sptorsion/errors.hpp"
#include "sptorsion/numtheory.hpp"

namespace nt = sptorsion::numtheory;
using sptorsion::BigInt;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (trial_prime(n)) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST(Sieve, SmallTables) {
  EXPECT_EQ(nt::sieve(2).primes(), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(nt::sieve(10).primes(), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  const auto t = nt::sieve(23);
  EXPECT_EQ(t.primes(), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23}));
  EXPECT_EQ(t.count_up_to(23), 9u);
  EXPECT_EQ(t.count_up_to(22), 8u);
  EXPECT_EQ(t.up_to(10).size(), 4u);
}

TEST(Sieve, RejectsTinyLimits) {
  EXPECT_THROW(nt::sieve(1), sptorsion::DomainError);
  EXPECT_THROW(nt::sieve(0), sptorsion::DomainError);
}

TEST(Sieve, MatchesTrialDivisionUpTo1e5) {
  const auto oracle = trial_primes(100000);
  const auto table = nt::sieve(100000);
  EXPECT_EQ(table.primes(), oracle);
  // Every smaller table is a prefix.
  for (std::uint64_t limit : {2u, 3u, 4u, 97u, 100u, 1000u, 65536u, 99991u}) {
    const auto t = nt::sieve(limit);
    ASSERT_EQ(t.primes().size(), table.count_up_to(limit)) << limit;
    EXPECT_TRUE(std::equal(t.primes().begin(), t.primes().end(), oracle.begin()));
  }
}

TEST(IsPrime, AgreesWithTrialDivisionAndKnownLargeValues) {
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(nt::is_prime(n), trial_prime(n)) << n;
  EXPECT_TRUE(nt::is_prime(18446744073709551557ULL));   // largest 64-bit prime
  EXPECT_FALSE(nt::is_prime(3215031751ULL));            // strong pseudoprime to 2,3,5,7
  EXPECT_FALSE(nt::is_prime(3825123056546413051ULL));   // spsp to bases up to 23
}

TEST(Factor, Examples) {
  EXPECT_TRUE(nt::factor(1).empty());
  EXPECT_EQ(nt::factor(12).entries(), (std::vector<nt::PrimePower>{{2, 2}, {3, 1}}));
  const auto f = nt::factor(BigInt(223092870));
  ASSERT_EQ(f.size(), 9u);
  const std::uint64_t expected[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(f.entries()[i], (nt::PrimePower{expected[i], 1}));
  }
  EXPECT_EQ(f.exponent_of(29), 0u);
}

TEST(Factor, RejectsNonPositive) {
  EXPECT_THROW(nt::factor(0), sptorsion::DomainError);
  EXPECT_THROW(nt::factor(-6), sptorsion::DomainError);
}

TEST(Factor, RoundTripsUpTo1e6) {
  for (long m = 1; m <= 1000000; ++m) {
    const auto f = nt::factor(BigInt(m));
    std::uint64_t previous = 1;
    for (const auto& e : f.entries()) {
      ASSERT_GT(e.prime, previous);
      ASSERT_GE(e.exponent, 1u);
      previous = e.prime;
    }
    ASSERT_EQ(f.value(), m) << m;
  }
}

TEST(Factor, LargeSemiprimeAndPrime) {
  const BigInt p = 1000003;
  const BigInt q = 999983;
  EXPECT_EQ(nt::factor(p * q).entries(),
            (std::vector<nt::PrimePower>{{999983, 1}, {1000003, 1}}));
  EXPECT_EQ(nt::factor(BigInt(4294967291ULL)).entries(),
            (std::vector<nt::PrimePower>{{4294967291ULL, 1}}));
}

TEST(FactorSmooth, UsesOnlyTheGivenPrimes) {
  const auto t = nt::sieve(7);
  EXPECT_EQ(nt::factor_smooth(BigInt(840), t.primes()).value(), 840);
  EXPECT_THROW(nt::factor_smooth(BigInt(22), t.primes()), sptorsion::DomainError);
}

TEST(Factorization, FromEntriesValidates) {
  EXPECT_EQ(nt::Factorization::from_entries({{2, 3}, {5, 1}}).value(), 40);
  EXPECT_THROW(nt::Factorization::from_entries({{5, 1}, {2, 1}}), sptorsion::DomainError);
  EXPECT_THROW(nt::Factorization::from_entries({{4, 1}}), sptorsion::DomainError);
  EXPECT_THROW(nt::Factorization::from_entries({{3, 0}}), sptorsion::DomainError);
}

TEST(Totient, PrimePowerExamples) {
  EXPECT_EQ(nt::totient_prime_power(2, 1), 1);
  EXPECT_EQ(nt::totient_prime_power(3, 1), 2);
  EXPECT_EQ(nt::totient_prime_power(2, 3), 4);
  EXPECT_EQ(nt::totient_prime_power(7, 3), 294);
  EXPECT_THROW(nt::totient_prime_power(9, 1), sptorsion::DomainError);
  EXPECT_THROW(nt::totient_prime_power(3, 0), sptorsion::DomainError);
}

TEST(Totient, MatchesGcdCountForSmallM) {
  for (unsigned m = 1; m <= 500; ++m) {
    unsigned count = 0;
    for (unsigned k = 1; k <= m; ++k) count += std::gcd(k, m) == 1;
    ASSERT_EQ(nt::totient(nt::factor(m)), count) << m;
  }
}

TEST(Totient, MultiplicativeOnCoprimePairs) {
  std::vector<BigInt> phi(10001);
  for (unsigned m = 1; m <= 10000; ++m) phi[m] = nt::totient(nt::factor(m));
  // Every coprime pair (a, b) with a, b <= 10^4 would be 6e7 factorizations;
  // a dense corner plus strided coverage keeps the check exhaustive in a and
  // broad in b.
  for (unsigned a = 1; a <= 10000; ++a) {
    const unsigned stride = a <= 200 ? 1 : 97;
    for (unsigned b = 1; b <= 10000; b += stride) {
      if (std::gcd(a, b) != 1) continue;
      ASSERT_EQ(nt::totient(nt::factor(BigInt(a) * b)), phi[a] * phi[b]) << a << " " << b;
    }
  }
}

TEST(Primorial, Examples) {
  EXPECT_EQ(nt::primorial(2), 2);
  EXPECT_EQ(nt::primorial(6), 30);
  EXPECT_EQ(nt::primorial(23), 223092870);
  EXPECT_EQ(nt::primorial(24), 223092870);
  EXPECT_THROW(nt::primorial(1), sptorsion::DomainError);
}
