#include "sptorsion/polynomial.hpp"

#include <map>
#include <mutex>

#include "sptorsion/errors.hpp"

namespace sptorsion {

namespace {

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

Polynomial divide_exact(const Polynomial& num, const Polynomial& den) {
  if (den.empty() || den.back() != 1) {
    throw DomainError("divisor must be monic");
  }
  Polynomial rem = num;
  trim(rem);
  if (rem.size() < den.size()) {
    if (!rem.empty()) throw InternalError("polynomial division is not exact");
    return {};
  }
  const std::size_t dd = den.size() - 1;
  Polynomial quotient(rem.size() - dd, BigInt(0));
  for (std::size_t k = quotient.size(); k-- > 0;) {
    const BigInt lead = rem[k + dd];
    quotient[k] = lead;
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= lead * den[i];
  }
  trim(rem);
  if (!rem.empty()) throw InternalError("polynomial division is not exact");
  return quotient;
}

Polynomial cyclotomic(std::uint64_t n) {
  if (n == 0) throw DomainError("cyclotomic index must be positive");
  static std::mutex mutex;
  static std::map<std::uint64_t, Polynomial> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Polynomial p(n + 1, BigInt(0));
  p[0] = -1;
  p[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic(d));
  }
  std::lock_guard lock(mutex);
  cache.emplace(n, p);
  return p;
}

IntMatrix companion(const Polynomial& monic) {
  if (monic.size() < 2 || monic.back() != 1) {
    throw DomainError("companion matrix needs a monic polynomial of degree >= 1");
  }
  const std::size_t d = monic.size() - 1;
  IntMatrix c(d, d);
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -monic[i];
  return c;
}

}  // namespace sptorsion
