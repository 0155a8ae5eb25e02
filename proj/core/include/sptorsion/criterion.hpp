#pragma once

#include <cstdint>
#include <vector>

#include "sptorsion/bigint.hpp"
#include "sptorsion/numtheory.hpp"

namespace sptorsion {

/// Genus g >= 1 of Sp(2g, Z). The degree budget 2g is derived on demand.
class Genus {
 public:
  explicit Genus(long long g);

  int value() const { return value_; }
  std::int64_t budget() const { return 2 * static_cast<std::int64_t>(value_); }
  /// Every prime dividing an order in S(g) is at most 2g + 1.
  std::uint64_t prime_support_bound() const {
    return 2 * static_cast<std::uint64_t>(value_) + 1;
  }

  friend bool operator==(Genus, Genus) = default;

 private:
  int value_;
};

}  // namespace sptorsion

namespace sptorsion::criterion {

struct CostTerm {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  BigInt cost;
};

/// Left-hand side of the order criterion for a fixed m.
///
/// When m = 2 (mod 4) the 2-part contributes nothing; otherwise every prime
/// power p^a | m contributes phi(p^a).
struct DegreeCostReport {
  BigInt m;
  std::vector<CostTerm> terms;
  BigInt total;
  bool exemption_applied = false;
};

struct Membership {
  bool member = false;
  DegreeCostReport report;
  Genus genus;
};

/// Additive cost of one prime-power factor: 0 for 2^1, 2^(a-1) for 2^a with
/// a >= 2, phi(p^a) for odd p. Summing over the factorization reproduces
/// degree_cost(m).total for every m >= 2.
BigInt prime_power_cost(std::uint64_t p, unsigned exponent);

/// Throws DomainError for m < 2: order 1 belongs only to the identity, which
/// the definition of S(g) excludes.
DegreeCostReport degree_cost(const BigInt& m);

Membership is_member(const BigInt& m, Genus g);

struct EnumerationOptions {
  int genus_cap = 40;
};

/// S(g) in ascending order. Refuses with CapExceeded above the genus cap,
/// since |S(g)| grows at least exponentially.
std::vector<BigInt> enumerate_orders(Genus g, const EnumerationOptions& options = {});

}  // namespace sptorsion::criterion
