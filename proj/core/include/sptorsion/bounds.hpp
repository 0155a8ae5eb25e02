#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sptorsion/extremal.hpp"

namespace sptorsion::bounds {

/// Euler-Mascheroni constant to 20 decimal places (OEIS A001620).
inline constexpr std::string_view kEulerGamma = "0.57721566490153286061";

/// Real sides are shrunk (for upper bounds) or inflated (for lower bounds)
/// by this relative amount before comparing.
inline constexpr double kRelativeGuard = 1e-9;

enum class Check {
  thm31,
  cor32,
  remark_upper,
  thm36,
  cor37,
  remark_lower,
  lemma33,
  lemma34,
  lemma35,
  dusart_sum,
  dusart_pi,
  dusart_product,
  rosser,
};

std::string_view check_name(Check c);
std::optional<Check> parse_check(std::string_view name);
const std::vector<Check>& all_checks();

enum class Status { pass, fail, precondition_unmet };

std::string_view status_name(Status s);

/// One inequality evaluated at one point. lhs, rhs and margin are decimal
/// strings: exact integers verbatim, reals with 20 significant digits.
/// margin is the slack in the direction of the relation, so it is positive
/// exactly when the inequality holds strictly.
struct BoundReport {
  std::string name;
  std::string variable;
  std::string point;
  std::string relation;
  std::string lhs;
  std::string rhs;
  std::string margin;
  Status status = Status::fail;

  bool pass() const { return status == Status::pass; }
  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

struct Range {
  long long from = 0;
  long long to = 0;
};

struct Options {
  extremal::Limits limits;
  unsigned jobs = 1;
};

/// Least integer K >= 3 with sqrt(K log K) >= 23.
int threshold_k();
/// Least integer L >= 2 with sqrt(L log L) >= 55.
int threshold_l();

/// Reports for one named check over a range of its variable (g, x or n).
std::vector<BoundReport> run_check(Check check, Range range, const Options& options = {});

/// h(g) <= 3e^{3g}, f(g) <= h(g), and the refined bound for g >= 1486.
std::vector<BoundReport> check_upper_bounds(Range g, const Options& options = {});
/// f(g), h(g) > e^{(1/4) sqrt(g / log g)} for g >= L, and the improved bound
/// once g log g >= 599^2.
std::vector<BoundReport> check_lower_bounds(Range g, const Options& options = {});
/// Prime-sum lemma over x; pi estimate and primorial membership over g.
std::vector<BoundReport> check_lemmas(Range x, Range g, const Options& options = {});
/// Dusart and Rosser estimates: prime sums over n, the rest over x.
std::vector<BoundReport> check_prime_estimates(Range x, Range n, const Options& options = {});

std::size_t count_failures(const std::vector<BoundReport>& reports);

std::string to_csv(const std::vector<BoundReport>& reports);
std::string to_json(const std::vector<BoundReport>& reports);

}  // namespace sptorsion::bounds
