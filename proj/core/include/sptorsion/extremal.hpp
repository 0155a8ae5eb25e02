#pragma once

#include <vector>

#include "sptorsion/bigint.hpp"
#include "sptorsion/criterion.hpp"
#include "sptorsion/numtheory.hpp"

namespace sptorsion::extremal {

/// f(g) = |S(g)| and h(g) = max S(g), with the factorization of h(g).
struct ExtremalRecord {
  int g = 0;
  BigInt f;
  BigInt h;
  numtheory::Factorization h_factorization;

  friend bool operator==(const ExtremalRecord&, const ExtremalRecord&) = default;
};

struct Limits {
  /// Largest genus the knapsack DPs accept without `allow_override`.
  int dp_genus_cap = 5000;
  /// Largest genus the enumeration oracle accepts.
  int brute_force_cap = 30;
  bool allow_override = false;
};

/// |S(g)| by a counting DP over exponent vectors of total cost <= 2g.
BigInt count_orders(Genus g, const Limits& limits = {});

/// h(g) and its factorization, by a group-knapsack DP over odd primes with
/// the 2-part applied afterwards.
BigInt maximal_order(Genus g, const Limits& limits = {});

/// Full record: f(g) from count_orders, h(g) from maximal_order.
ExtremalRecord max_order(Genus g, const Limits& limits = {});

/// f and h straight from enumerate_orders. Throws CapExceeded above the cap.
ExtremalRecord brute_force_extremal(Genus g, const Limits& limits = {});

struct TableOptions {
  Limits limits;
  unsigned jobs = 1;
  /// Recompute each row with the enumeration oracle and throw InternalError
  /// on any disagreement.
  bool oracle = false;
};

/// Rows for g_from..g_to inclusive, each computed independently.
std::vector<ExtremalRecord> extremal_table(int g_from, int g_to,
                                           const TableOptions& options = {});

}  // namespace sptorsion::extremal
