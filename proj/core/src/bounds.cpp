#include "sptorsion/bounds.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "parallel.hpp"
#include "sptorsion/criterion.hpp"
#include "sptorsion/errors.hpp"
#include "sptorsion/numtheory.hpp"

namespace sptorsion::bounds {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

constexpr long long kMaxSweepX = 100'000'000;

constexpr std::array<std::pair<Check, std::string_view>, 13> kNames{{
    {Check::thm31, "thm31"},
    {Check::cor32, "cor32"},
    {Check::remark_upper, "remark-upper"},
    {Check::thm36, "thm36"},
    {Check::cor37, "cor37"},
    {Check::remark_lower, "remark-lower"},
    {Check::lemma33, "lemma33"},
    {Check::lemma34, "lemma34"},
    {Check::lemma35, "lemma35"},
    {Check::dusart_sum, "dusart-sum"},
    {Check::dusart_pi, "dusart-pi"},
    {Check::dusart_product, "dusart-product"},
    {Check::rosser, "rosser"},
}};

enum class Relation { lt, le, gt, ge };

std::string_view relation_text(Relation r) {
  switch (r) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
  }
  return "?";
}

bool is_upper(Relation r) { return r == Relation::lt || r == Relation::le; }

std::string format_wide(const Wide& v) { return v.str(20, std::ios_base::scientific); }

// Exact rational num/den with den in {1, 2}; anything else falls back to "a/b".
std::string format_rational(const BigInt& num, const BigInt& den) {
  if (den == 1) return num.str();
  if (den == 2) {
    const BigInt whole = num / 2;
    const bool half = num % 2 != 0;
    if (!half) return whole.str();
    // num odd: num/2 = whole + sign*0.5 with truncating division.
    if (num < 0) return (whole == 0 ? std::string("-0") : whole.str()) + ".5";
    return whole.str() + ".5";
  }
  return num.str() + "/" + den.str();
}

Wide euler_gamma() { return Wide(std::string(kEulerGamma)); }

struct Point {
  std::string_view variable;
  long long value;
};

BoundReport unmet(std::string name, Point p, Relation rel) {
  BoundReport r;
  r.name = std::move(name);
  r.variable = p.variable;
  r.point = std::to_string(p.value);
  r.relation = relation_text(rel);
  r.status = Status::precondition_unmet;
  return r;
}

// lhs (relation) num/den, all exact.
BoundReport compare_exact(std::string name, Point p, Relation rel, const BigInt& lhs,
                          const BigInt& rhs_num, const BigInt& rhs_den = 1) {
  BoundReport r;
  r.name = std::move(name);
  r.variable = p.variable;
  r.point = std::to_string(p.value);
  r.relation = relation_text(rel);
  r.lhs = lhs.str();
  r.rhs = format_rational(rhs_num, rhs_den);
  const BigInt scaled_lhs = lhs * rhs_den;
  const BigInt slack = is_upper(rel) ? rhs_num - scaled_lhs : scaled_lhs - rhs_num;
  r.margin = format_rational(slack, rhs_den);
  const bool holds = (rel == Relation::lt || rel == Relation::gt) ? slack > 0 : slack >= 0;
  r.status = holds ? Status::pass : Status::fail;
  return r;
}

// lhs (relation) rhs with rhs real: rhs is moved against the inequality by
// the relative guard before comparing.
BoundReport compare_real(std::string name, Point p, Relation rel, const Wide& lhs,
                         std::string lhs_text, const Wide& rhs) {
  BoundReport r;
  r.name = std::move(name);
  r.variable = p.variable;
  r.point = std::to_string(p.value);
  r.relation = relation_text(rel);
  r.lhs = std::move(lhs_text);
  r.rhs = format_wide(rhs);
  const Wide slack = is_upper(rel) ? rhs - lhs : lhs - rhs;
  r.margin = format_wide(slack);
  const Wide guard = abs(rhs) * Wide(kRelativeGuard);
  const Wide guarded = is_upper(rel) ? rhs - guard : rhs + guard;
  bool holds = false;
  switch (rel) {
    case Relation::lt: holds = lhs < guarded; break;
    case Relation::le: holds = lhs <= guarded; break;
    case Relation::gt: holds = lhs > guarded; break;
    case Relation::ge: holds = lhs >= guarded; break;
  }
  r.status = holds ? Status::pass : Status::fail;
  return r;
}

BoundReport compare_real(std::string name, Point p, Relation rel, const BigInt& lhs,
                         const Wide& rhs) {
  return compare_real(std::move(name), p, rel, Wide(lhs), lhs.str(), rhs);
}

void check_range(Range range, long long minimum, std::string_view what) {
  if (range.from > range.to) {
    throw DomainError("empty range " + std::to_string(range.from) + ".." +
                      std::to_string(range.to));
  }
  if (range.from < minimum) {
    throw DomainError(std::string(what) + " must be at least " + std::to_string(minimum));
  }
}

// ---------------------------------------------------------------- genus checks

bool is_genus_check(Check c) {
  switch (c) {
    case Check::thm31:
    case Check::cor32:
    case Check::remark_upper:
    case Check::thm36:
    case Check::cor37:
    case Check::remark_lower:
      return true;
    default:
      return false;
  }
}

bool remark_lower_applies(long long g) {
  const Wide gw(g);
  return gw * log(gw) >= Wide(599 * 599);
}

struct GenusNeeds {
  bool f = false;
  bool h = false;
};

GenusNeeds needs_at(Check c, long long g) {
  switch (c) {
    case Check::thm31: return {false, true};
    case Check::cor32: return {true, true};
    case Check::remark_upper: return {false, g >= 1486};
    case Check::thm36: return {g >= threshold_l(), false};
    case Check::cor37: return {false, g >= threshold_l()};
    case Check::remark_lower: {
      const bool on = remark_lower_applies(g);
      return {on, on};
    }
    default: return {};
  }
}

std::vector<BoundReport> genus_rows(std::span<const Check> checks, Range range,
                                    const Options& options) {
  check_range(range, 1, "genus");
  const auto n = static_cast<std::size_t>(range.to - range.from + 1);
  const int l = threshold_l();

  // Refuse oversized work before starting any of it.
  for (long long g = range.from; g <= range.to; ++g) {
    for (Check c : checks) {
      const auto need = needs_at(c, g);
      if ((need.f || need.h) && g > options.limits.dp_genus_cap &&
          !options.limits.allow_override) {
        throw CapExceeded("genus " + std::to_string(g) + " exceeds the DP cap " +
                          std::to_string(options.limits.dp_genus_cap) +
                          " (an explicit override is required)");
      }
    }
  }

  std::vector<BigInt> f(n);
  std::vector<BigInt> h(n);
  detail::parallel_for(n, options.jobs, [&](std::size_t i) {
    const long long g = range.from + static_cast<long long>(i);
    GenusNeeds need;
    for (Check c : checks) {
      const auto at = needs_at(c, g);
      need.f = need.f || at.f;
      need.h = need.h || at.h;
    }
    if (need.f) f[i] = extremal::count_orders(Genus(g), options.limits);
    if (need.h) h[i] = extremal::maximal_order(Genus(g), options.limits);
  });

  std::vector<BoundReport> out;
  for (Check c : checks) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long g = range.from + static_cast<long long>(i);
      const Point p{"g", g};
      const Wide gw(g);
      switch (c) {
        case Check::thm31:
          out.push_back(compare_real("thm31", p, Relation::le, h[i], 3 * exp(3 * gw)));
          break;
        case Check::cor32:
          out.push_back(compare_exact("cor32", p, Relation::le, f[i], h[i]));
          break;
        case Check::remark_upper: {
          if (g < 1486) {
            out.push_back(unmet("remark-upper", p, Relation::le));
            break;
          }
          const Wide two_g_plus_one(2 * g + 1);
          const Wide rhs = 2 * exp(euler_gamma()) * log(two_g_plus_one) *
                           exp(two_g_plus_one / exp(Wide(1)));
          out.push_back(compare_real("remark-upper", p, Relation::le, h[i], rhs));
          break;
        }
        case Check::thm36:
        case Check::cor37: {
          const bool is_f = c == Check::thm36;
          std::string name(check_name(c));
          if (g < l) {
            out.push_back(unmet(name, p, Relation::gt));
            break;
          }
          const Wide rhs = exp(sqrt(gw / log(gw)) / 4);
          out.push_back(compare_real(name, p, Relation::gt, is_f ? f[i] : h[i], rhs));
          break;
        }
        case Check::remark_lower: {
          if (!remark_lower_applies(g)) {
            out.push_back(unmet("remark-lower.f", p, Relation::gt));
            out.push_back(unmet("remark-lower.h", p, Relation::gt));
            break;
          }
          const Wide rhs = exp(sqrt(gw / (4 * log(gw))));
          out.push_back(compare_real("remark-lower.f", p, Relation::gt, f[i], rhs));
          out.push_back(compare_real("remark-lower.h", p, Relation::gt, h[i], rhs));
          break;
        }
        default:
          throw InternalError("not a genus check");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- lemma checks

// floor(sqrt(g log g)); g log g is irrational for g >= 2, so 50 digits
// settle the floor unambiguously.
std::uint64_t floor_sqrt_g_log_g(long long g) {
  const Wide gw(g);
  const Wide y = sqrt(gw * log(gw));
  return static_cast<std::uint64_t>(floor(y).convert_to<long long>());
}

std::vector<BoundReport> lemma34_rows(Range range) {
  check_range(range, 1, "genus");
  const int k = threshold_k();
  const auto table = numtheory::sieve(std::max<std::uint64_t>(2, floor_sqrt_g_log_g(range.to)));
  std::vector<BoundReport> out;
  for (long long g = range.from; g <= range.to; ++g) {
    const Point p{"g", g};
    if (g < k) {
      out.push_back(unmet("lemma34", p, Relation::lt));
      out.push_back(unmet("lemma34.dusart-1.2762", p, Relation::lt));
      out.push_back(unmet("lemma34.dusart-3/2", p, Relation::lt));
      continue;
    }
    const Wide gw(g);
    const Wide y = sqrt(gw * log(gw));
    const BigInt pi_y = table.count_up_to(floor_sqrt_g_log_g(g));
    const Wide log_y = log(y);
    out.push_back(compare_real("lemma34", p, Relation::lt, pi_y, 3 * y / log(gw * log(gw))));
    out.push_back(compare_real("lemma34.dusart-1.2762", p, Relation::lt, pi_y,
                               y / log_y * (1 + Wide("1.2762") / log_y)));
    out.push_back(compare_real("lemma34.dusart-3/2", p, Relation::lt, pi_y,
                               y / log_y * (1 + Wide(3) / (2 * log_y))));
  }
  return out;
}

std::vector<BoundReport> lemma35_rows(Range range) {
  check_range(range, 1, "genus");
  const int k = threshold_k();
  const auto table = numtheory::sieve(std::max<std::uint64_t>(2, floor_sqrt_g_log_g(range.to)));
  std::vector<BoundReport> out;
  for (long long g = range.from; g <= range.to; ++g) {
    const Point p{"g", g};
    if (g < k) {
      out.push_back(unmet("lemma35", p, Relation::le));
      out.push_back(unmet("lemma35.beta", p, Relation::lt));
      continue;
    }
    BigInt primorial = 1;
    BigInt beta = 0;
    for (std::uint64_t q : table.up_to(floor_sqrt_g_log_g(g))) {
      primorial *= q;
      if (q != 2) beta += q - 1;
    }
    const auto membership = criterion::is_member(primorial, Genus(g));
    BoundReport row = compare_exact("lemma35", p, Relation::le, membership.report.total,
                                    BigInt(2 * g));
    if (row.pass() != membership.member) {
      throw InternalError("membership and degree-cost comparison disagree");
    }
    out.push_back(std::move(row));
    out.push_back(compare_exact("lemma35.beta", p, Relation::lt, beta, BigInt(3 * g), 2));
  }
  return out;
}

// ------------------------------------------------------------ prime-sum sweeps

std::vector<BoundReport> x_rows(Check c, Range range) {
  check_range(range, 1, "x");
  if (range.to > kMaxSweepX) {
    throw DomainError("sweeps are limited to x <= " + std::to_string(kMaxSweepX));
  }
  const auto table = numtheory::sieve(std::max<long long>(2, range.to));
  const auto& primes = table.primes();

  std::vector<BoundReport> out;
  std::size_t pi = 0;
  BigInt prime_sum = 0;
  BigInt product_num = 1;  // prod (p - 1)
  BigInt product_den = 1;  // prod p
  for (long long x = range.from; x <= range.to; ++x) {
    while (pi < primes.size() && primes[pi] <= static_cast<std::uint64_t>(x)) {
      prime_sum += primes[pi];
      if (c == Check::dusart_product) {
        product_num *= primes[pi] - 1;
        product_den *= primes[pi];
      }
      ++pi;
    }
    const Point p{"x", x};
    const double xd = static_cast<double>(x);
    const double lx = std::log(xd);
    switch (c) {
      case Check::lemma33:
        if (x < 23) {
          out.push_back(unmet("lemma33", p, Relation::lt));
        } else {
          out.push_back(compare_exact("lemma33", p, Relation::lt, prime_sum,
                                      BigInt(x) * pi, 2));
        }
        break;
      case Check::dusart_pi:
        if (x < 2) {
          out.push_back(unmet("dusart-pi.upper", p, Relation::le));
        } else {
          out.push_back(compare_real("dusart-pi.upper", p, Relation::le, BigInt(pi),
                                     Wide(xd / lx * (1.0 + 1.2762 / lx))));
        }
        if (x < 599) {
          out.push_back(unmet("dusart-pi.lower", p, Relation::ge));
        } else {
          out.push_back(compare_real("dusart-pi.lower", p, Relation::ge, BigInt(pi),
                                     Wide(xd / lx * (1.0 + 1.0 / lx))));
        }
        break;
      case Check::dusart_product: {
        if (x < 2973) {
          out.push_back(unmet("dusart-product", p, Relation::gt));
          break;
        }
        const double lhs = ratio_to_double(product_num, product_den);
        const double gamma = euler_gamma().convert_to<double>();
        const double rhs = std::exp(-gamma) / lx * (1.0 - 0.2 / (lx * lx));
        out.push_back(compare_real("dusart-product", p, Relation::gt, Wide(lhs),
                                   format_wide(Wide(lhs)), Wide(rhs)));
        break;
      }
      case Check::rosser:
        if (x < 55) {
          out.push_back(unmet("rosser", p, Relation::gt));
        } else {
          out.push_back(compare_real("rosser", p, Relation::gt, BigInt(pi),
                                     Wide(xd / (lx + 2.0))));
        }
        break;
      default:
        throw InternalError("not an x sweep");
    }
  }
  return out;
}

std::vector<BoundReport> dusart_sum_rows(Range range) {
  check_range(range, 1, "n");
  if (range.to > 10'000'000) throw DomainError("n is limited to 1e7");
  // p_n < n (log n + log log n) for n >= 6.
  const double nn = static_cast<double>(std::max<long long>(range.to, 6));
  const auto limit = static_cast<std::uint64_t>(nn * (std::log(nn) + std::log(std::log(nn)))) + 16;
  const auto table = numtheory::sieve(limit);
  const auto& primes = table.primes();
  std::vector<BoundReport> out;
  BigInt sum = 0;
  std::size_t counted = 0;
  for (long long n = range.from; n <= range.to; ++n) {
    while (counted < static_cast<std::size_t>(n)) sum += primes.at(counted++);
    const Point p{"n", n};
    if (n < 9) {
      out.push_back(unmet("dusart-sum", p, Relation::lt));
      continue;
    }
    out.push_back(compare_exact("dusart-sum", p, Relation::lt, sum,
                                BigInt(n) * primes[static_cast<std::size_t>(n - 1)], 2));
  }
  return out;
}

}  // namespace

std::string_view check_name(Check c) {
  for (const auto& [check, name] : kNames) {
    if (check == c) return name;
  }
  return "?";
}

std::optional<Check> parse_check(std::string_view name) {
  for (const auto& [check, n] : kNames) {
    if (n == name) return check;
  }
  return std::nullopt;
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = [] {
    std::vector<Check> v;
    for (const auto& [check, name] : kNames) v.push_back(check);
    return v;
  }();
  return checks;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::precondition_unmet: return "precondition-unmet";
  }
  return "?";
}

int threshold_k() {
  static const int k = [] {
    for (int v = 3;; ++v) {
      const Wide w(v);
      if (sqrt(w * log(w)) >= 23) return v;
    }
  }();
  return k;
}

int threshold_l() {
  static const int l = [] {
    for (int v = 2;; ++v) {
      const Wide w(v);
      if (sqrt(w * log(w)) >= 55) return v;
    }
  }();
  return l;
}

std::vector<BoundReport> run_check(Check check, Range range, const Options& options) {
  if (is_genus_check(check)) {
    const std::array<Check, 1> one{check};
    return genus_rows(one, range, options);
  }
  switch (check) {
    case Check::lemma33:
    case Check::dusart_pi:
    case Check::dusart_product:
    case Check::rosser:
      return x_rows(check, range);
    case Check::lemma34: return lemma34_rows(range);
    case Check::lemma35: return lemma35_rows(range);
    case Check::dusart_sum: return dusart_sum_rows(range);
    default: throw InternalError("unhandled check");
  }
}

std::vector<BoundReport> check_upper_bounds(Range g, const Options& options) {
  const std::array<Check, 3> checks{Check::thm31, Check::cor32, Check::remark_upper};
  return genus_rows(checks, g, options);
}

std::vector<BoundReport> check_lower_bounds(Range g, const Options& options) {
  const std::array<Check, 3> checks{Check::thm36, Check::cor37, Check::remark_lower};
  return genus_rows(checks, g, options);
}

std::vector<BoundReport> check_lemmas(Range x, Range g, const Options&) {
  auto out = x_rows(Check::lemma33, x);
  for (auto& r : lemma34_rows(g)) out.push_back(std::move(r));
  for (auto& r : lemma35_rows(g)) out.push_back(std::move(r));
  return out;
}

std::vector<BoundReport> check_prime_estimates(Range x, Range n, const Options&) {
  auto out = dusart_sum_rows(n);
  for (Check c : {Check::dusart_pi, Check::dusart_product, Check::rosser}) {
    for (auto& r : x_rows(c, x)) out.push_back(std::move(r));
  }
  return out;
}

std::size_t count_failures(const std::vector<BoundReport>& reports) {
  std::size_t failures = 0;
  for (const auto& r : reports) {
    if (r.status == Status::fail) ++failures;
  }
  return failures;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out << "name,variable,point,relation,lhs,rhs,margin,pass,status\n";
  for (const auto& r : reports) {
    out << csv_field(r.name) << ',' << r.variable << ',' << r.point << ','
        << csv_field(r.relation) << ',' << r.lhs << ',' << r.rhs << ',' << r.margin << ','
        << (r.pass() ? "true" : "false") << ',' << status_name(r.status) << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<BoundReport>& reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    rows.push_back({{"name", r.name},
                    {"variable", r.variable},
                    {"point", r.point},
                    {"relation", r.relation},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"margin", r.margin},
                    {"pass", r.pass()},
                    {"status", status_name(r.status)}});
  }
  return rows.dump(2);
}

}  // namespace sptorsion::bounds
