#include "sptorsion/criterion.hpp"

#include <algorithm>
#include <string>

#include "sptorsion/errors.hpp"

namespace sptorsion {

Genus::Genus(long long g) : value_(0) {
  if (g < 1) throw DomainError("genus must be at least 1");
  if (g > 1'000'000'000LL) throw DomainError("genus is unreasonably large");
  value_ = static_cast<int>(g);
}

}  // namespace sptorsion

namespace sptorsion::criterion {

BigInt prime_power_cost(std::uint64_t p, unsigned exponent) {
  if (p == 2) {
    if (exponent == 0) throw DomainError("exponent must be positive");
    return exponent == 1 ? BigInt(0) : pow_u64(2, exponent - 1);
  }
  return numtheory::totient_prime_power(p, exponent);
}

DegreeCostReport degree_cost(const BigInt& m) {
  if (m < 2) {
    throw DomainError(
        "orders start at 2: m = 1 is the order of the identity, which is "
        "excluded from S(g)");
  }
  DegreeCostReport report;
  report.m = m;
  report.exemption_applied = boost::multiprecision::integer_modulus(m, 4) == 2;
  report.total = 0;
  const auto factorization = numtheory::factor(m);
  for (const auto& e : factorization.entries()) {
    BigInt cost = (e.prime == 2 && report.exemption_applied)
                      ? BigInt(0)
                      : numtheory::totient_prime_power(e.prime, e.exponent);
    report.total += cost;
    report.terms.push_back({e.prime, e.exponent, std::move(cost)});
  }
  return report;
}

Membership is_member(const BigInt& m, Genus g) {
  DegreeCostReport report = degree_cost(m);
  const bool member = report.total <= g.budget();
  return {member, std::move(report), g};
}

namespace {

struct Choice {
  std::int64_t cost;
  BigInt factor;
};

// Exponent choices for an odd prime with positive cost within the budget.
std::vector<Choice> odd_choices(std::uint64_t p, std::int64_t budget) {
  std::vector<Choice> out;
  std::int64_t cost = static_cast<std::int64_t>(p) - 1;
  BigInt power = p;
  while (cost <= budget) {
    out.push_back({cost, power});
    cost *= static_cast<std::int64_t>(p);
    power *= p;
  }
  return out;
}

void search(std::span<const std::uint64_t> odd_primes, std::size_t index,
            std::int64_t remaining, const BigInt& partial,
            std::vector<BigInt>& sink) {
  if (index == odd_primes.size()) {
    sink.push_back(partial);
    return;
  }
  search(odd_primes, index + 1, remaining, partial, sink);
  for (const auto& c : odd_choices(odd_primes[index], remaining)) {
    search(odd_primes, index + 1, remaining - c.cost, partial * c.factor, sink);
  }
}

}  // namespace

std::vector<BigInt> enumerate_orders(Genus g, const EnumerationOptions& options) {
  if (g.value() > options.genus_cap) {
    throw CapExceeded("enumeration of S(" + std::to_string(g.value()) +
                      ") exceeds the genus cap " +
                      std::to_string(options.genus_cap));
  }
  const std::int64_t budget = g.budget();
  const auto table = numtheory::sieve(g.prime_support_bound());
  const auto primes = table.primes();
  const std::span<const std::uint64_t> odd(primes.data() + 1, primes.size() - 1);

  // Three kinds of 2-part: 2^0 and 2^1 (both free), or 2^a with a >= 2.
  std::vector<BigInt> orders;
  search(odd, 0, budget, BigInt(1), orders);
  search(odd, 0, budget, BigInt(2), orders);
  BigInt two_power = 4;
  for (std::int64_t cost = 2; cost <= budget; cost *= 2, two_power *= 2) {
    search(odd, 0, budget - cost, two_power, orders);
  }
  std::erase(orders, BigInt(1));
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace sptorsion::criterion
