#include "sptorsion/extremal.hpp"

#include <algorithm>
#include <string>

#include "sptorsion/errors.hpp"
#include "parallel.hpp"

namespace sptorsion::extremal {

namespace {

void check_dp_cap(Genus g, const Limits& limits) {
  if (g.value() > limits.dp_genus_cap && !limits.allow_override) {
    throw CapExceeded("genus " + std::to_string(g.value()) +
                      " exceeds the DP cap " +
                      std::to_string(limits.dp_genus_cap) +
                      " (an explicit override is required)");
  }
}

struct Option {
  std::size_t cost;
  unsigned long factor;
};

// Positive-cost exponent choices of an odd prime within the budget.
std::vector<Option> odd_options(std::uint64_t p, std::size_t budget) {
  std::vector<Option> out;
  std::size_t cost = p - 1;
  unsigned long power = p;
  while (cost <= budget) {
    out.push_back({cost, power});
    cost *= p;
    power *= p;
  }
  return out;
}

}  // namespace

BigInt count_orders(Genus g, const Limits& limits) {
  check_dp_cap(g, limits);
  const auto budget = static_cast<std::size_t>(g.budget());
  const auto table = numtheory::sieve(g.prime_support_bound());

  // ways[b]: exponent vectors of total cost exactly b.
  std::vector<BigInt> ways(budget + 1, BigInt(0));
  ways[0] = 1;

  // Prime 2: exponents 0 and 1 are both free, 2^a costs 2^(a-1).
  for (std::size_t b = budget + 1; b-- > 0;) {
    BigInt acc = ways[b] * 2;
    for (std::size_t cost = 2; cost <= b; cost *= 2) acc += ways[b - cost];
    ways[b] = std::move(acc);
  }
  for (std::uint64_t p : table.primes()) {
    if (p == 2) continue;
    const auto options = odd_options(p, budget);
    for (std::size_t b = budget + 1; b-- > 0;) {
      for (const auto& o : options) {
        if (o.cost > b) break;
        ways[b] += ways[b - o.cost];
      }
    }
  }
  BigInt total = 0;
  for (const auto& w : ways) total += w;
  return total - 1;  // the all-zero vector is m = 1
}

BigInt maximal_order(Genus g, const Limits& limits) {
  check_dp_cap(g, limits);
  const auto budget = static_cast<std::size_t>(g.budget());
  const auto table = numtheory::sieve(g.prime_support_bound());

  // best[b]: largest odd m with cost <= b. Odd primes cost at least 2, so a
  // descending sweep reads only cells not yet updated for the current prime.
  std::vector<BigInt> best(budget + 1, BigInt(1));
  BigInt candidate;
  for (std::uint64_t p : table.primes()) {
    if (p == 2) continue;
    const auto options = odd_options(p, budget);
    for (std::size_t b = budget + 1; b-- > 0;) {
      for (const auto& o : options) {
        if (o.cost > b) break;
        candidate = best[b - o.cost];
        candidate *= o.factor;
        if (candidate > best[b]) best[b].swap(candidate);
      }
    }
  }

  // 2-part: the free factor 2 on the full budget, or 2^a at cost 2^(a-1).
  BigInt h = best[budget] * 2;
  BigInt two_power = 4;
  for (std::size_t cost = 2; cost <= budget; cost *= 2, two_power *= 2) {
    candidate = best[budget - cost] * two_power;
    if (candidate > h) h.swap(candidate);
  }
  return h;
}

ExtremalRecord max_order(Genus g, const Limits& limits) {
  ExtremalRecord record;
  record.g = g.value();
  record.h = maximal_order(g, limits);
  record.f = count_orders(g, limits);
  const auto table = numtheory::sieve(g.prime_support_bound());
  record.h_factorization = numtheory::factor_smooth(record.h, table.primes());
  return record;
}

ExtremalRecord brute_force_extremal(Genus g, const Limits& limits) {
  if (g.value() > limits.brute_force_cap) {
    throw CapExceeded("brute-force enumeration refuses genus " +
                      std::to_string(g.value()) + " (cap " +
                      std::to_string(limits.brute_force_cap) + ")");
  }
  const auto orders = criterion::enumerate_orders(
      g, {.genus_cap = std::max(limits.brute_force_cap, g.value())});
  ExtremalRecord record;
  record.g = g.value();
  record.f = orders.size();
  record.h = orders.back();
  record.h_factorization = numtheory::factor(record.h);
  return record;
}

std::vector<ExtremalRecord> extremal_table(int g_from, int g_to,
                                           const TableOptions& options) {
  if (g_from < 1 || g_to < g_from) {
    throw DomainError("invalid genus range " + std::to_string(g_from) + ".." +
                      std::to_string(g_to));
  }
  const auto n = static_cast<std::size_t>(g_to - g_from + 1);
  // Validate caps up front so a refusal happens before any work.
  for (int g = g_from; g <= g_to; ++g) {
    check_dp_cap(Genus(g), options.limits);
    if (options.oracle && g > options.limits.brute_force_cap) {
      throw CapExceeded("oracle cross-check refuses genus " + std::to_string(g) +
                        " (cap " +
                        std::to_string(options.limits.brute_force_cap) + ")");
    }
  }

  std::vector<ExtremalRecord> rows(n);
  detail::parallel_for(n, options.jobs, [&](std::size_t i) {
    const Genus g(g_from + static_cast<int>(i));
    rows[i] = max_order(g, options.limits);
    if (options.oracle) {
      const auto oracle = brute_force_extremal(g, options.limits);
      if (oracle != rows[i]) {
        throw InternalError("DP and enumeration disagree at g = " +
                            std::to_string(g.value()) + ": DP (" + rows[i].f.str() +
                            ", " + rows[i].h.str() + ") vs oracle (" +
                            oracle.f.str() + ", " + oracle.h.str() + ")");
      }
    }
  });
  return rows;
}

}  // namespace sptorsion::extremal
