// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sptorsion/bounds.hpp"
#include "sptorsion/criterion.hpp"
#include "sptorsion/extremal.hpp"
#include "sptorsion/witness.hpp"

using namespace sptorsion;
namespace bd = sptorsion::bounds;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;  // 0 means untimed
  std::function<Outcome()> body;
};

Outcome expect_clean(const std::vector<bd::BoundReport>& rows, const std::string& label,
                     bool every_row_applies) {
  Outcome o;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    if (r.status == bd::Status::fail) {
      o.fail(label + ": " + r.name + " fails at " + r.variable + "=" + r.point + " (" + r.lhs +
             " " + r.relation + " " + r.rhs + ")");
    } else if (r.status == bd::Status::precondition_unmet && every_row_applies) {
      o.fail(label + ": " + r.name + " unexpectedly outside its range at " + r.point);
    }
    passed += r.pass();
  }
  if (passed == 0) o.fail(label + ": no row was evaluated");
  if (o.ok) o.detail = label + ": " + std::to_string(passed) + " rows pass";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (int g = 1; g <= 12; ++g) {
    const auto dp = extremal::max_order(Genus(g));
    const auto oracle = extremal::brute_force_extremal(Genus(g));
    if (dp != oracle) {
      o.fail("g=" + std::to_string(g) + ": DP (" + dp.f.str() + ", " + dp.h.str() +
             ") vs enumeration (" + oracle.f.str() + ", " + oracle.h.str() + ")");
    }
  }
  if (o.ok) o.detail = "f and h agree exactly for g=1..12";
  return o;
}

Outcome small_structure() {
  Outcome o;
  if (criterion::enumerate_orders(Genus(1)) != std::vector<BigInt>{2, 3, 4, 6}) {
    o.fail("S(1) differs from {2,3,4,6}");
  }
  const BigInt expected[] = {6, 12, 30};
  for (int g = 1; g <= 3; ++g) {
    const BigInt dp = extremal::maximal_order(Genus(g));
    const BigInt oracle = extremal::brute_force_extremal(Genus(g)).h;
    if (dp != expected[g - 1] || oracle != expected[g - 1]) {
      o.fail("h(" + std::to_string(g) + ") = " + dp.str() + " (DP), " + oracle.str() +
             " (enumeration)");
    }
  }
  if (o.ok) o.detail = "S(1) = {2,3,4,6}; h(1..3) = 6, 12, 30";
  return o;
}

Outcome witness_soundness() {
  Outcome o;
  std::size_t built = 0;
  for (int g = 1; g <= 6; ++g) {
    const Genus genus(g);
    for (const auto& m : criterion::enumerate_orders(genus)) {
      try {
        const auto w = witness::build_witness(m, genus);
        const auto cert = witness::verify_witness(w.matrix, m, genus);
        if (w.matrix.rows() != static_cast<std::size_t>(2 * g) || !cert.passed()) {
          o.fail("m=" + m.str() + " g=" + std::to_string(g) + ": " + cert.first_failure());
        }
        ++built;
      } catch (const std::exception& e) {
        o.fail("m=" + m.str() + " g=" + std::to_string(g) + ": " + e.what());
      }
    }
  }
  if (o.ok) o.detail = std::to_string(built) + " witnesses verified for g=1..6";
  return o;
}

Outcome upper_chain() {
  Outcome o = expect_clean(bd::run_check(bd::Check::thm31, {1, 300}), "thm31 g=1..300", true);
  const Outcome c = expect_clean(bd::run_check(bd::Check::cor32, {1, 300}), "cor32 g=1..300", true);
  if (!c.ok) return c;
  if (o.ok) o.detail += "; " + c.detail;
  return o;
}

Outcome refined_upper() {
  return expect_clean(bd::run_check(bd::Check::remark_upper, {1486, 1500}),
                      "remark-upper g=1486..1500", true);
}

Outcome lower_bounds() {
  const long long l = bd::threshold_l();
  const bd::Range range{l, l + 100};
  const std::string span = std::to_string(l) + ".." + std::to_string(l + 100);
  Outcome o = expect_clean(bd::run_check(bd::Check::thm36, range), "thm36 g=" + span, true);
  const Outcome h = expect_clean(bd::run_check(bd::Check::cor37, range), "cor37 g=" + span, true);
  if (!h.ok) return h;
  if (o.ok) o.detail = "L=" + std::to_string(l) + "; " + o.detail + "; " + h.detail;
  return o;
}

Outcome prime_estimates() {
  struct Sweep {
    bd::Check check;
    bd::Range range;
  };
  const Sweep sweeps[] = {
      {bd::Check::lemma33, {23, 100000}},
      {bd::Check::dusart_sum, {9, 10000}},
      {bd::Check::rosser, {55, 100000}},
      {bd::Check::dusart_pi, {2, 100000}},
      {bd::Check::dusart_product, {2973, 100000}},
  };
  Outcome o;
  std::string summary;
  for (const auto& s : sweeps) {
    const std::string label = std::string(bd::check_name(s.check)) + " " +
                              std::to_string(s.range.from) + ".." + std::to_string(s.range.to);
    // dusart-pi carries a lower estimate that only starts at 599.
    const bool every_row_applies = s.check != bd::Check::dusart_pi;
    const auto result = expect_clean(bd::run_check(s.check, s.range), label, every_row_applies);
    if (!result.ok) {
      o.fail(result.detail);
    } else {
      summary += (summary.empty() ? "" : "; ") + result.detail;
    }
  }
  if (o.ok) o.detail = summary;
  return o;
}

Outcome primorial_membership() {
  const long long k = bd::threshold_k();
  Outcome o = expect_clean(bd::run_check(bd::Check::lemma35, {k, k + 500}),
                           "lemma35 g=" + std::to_string(k) + ".." + std::to_string(k + 500),
                           true);
  if (o.ok) o.detail = "K=" + std::to_string(k) + "; " + o.detail;
  return o;
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "sptorsion-acceptance";
  std::filesystem::create_directories(dir);
  const std::string witness_file = (dir / "w.json").string();
  const std::vector<std::vector<std::string>> commands{
      {"member", "360", "--genus", "7", "--format", "json"},
      {"member", "7", "--genus", "2", "--format", "json"},
      {"orders", "--genus", "4", "--format", "json"},
      {"extremal", "--genus", "1..40", "--format", "json"},
      {"extremal", "--genus", "1..12", "--oracle", "--format", "json"},
      {"witness", "420", "--genus", "8", "--format", "json"},
      {"witness", "60", "--genus", "5", "-o", witness_file, "--format", "json"},
      {"verify", witness_file, "--format", "json"},
      {"bounds", "--check", "thm31", "--range", "1..50", "--format", "json"},
      {"bounds", "--check", "rosser", "--range", "55..2000", "--format", "json"},
      {"bounds", "--check", "lemma35", "--range", "113..150", "--format", "json"},
  };
  Outcome o;
  for (const auto& c : commands) {
    std::vector<std::string> args{"sptorsion"};
    args.insert(args.end(), c.begin(), c.end());
    std::ostringstream out1, err1, out2, err2;
    const int code1 = cli::run(args, out1, err1);
    const int code2 = cli::run(args, out2, err2);
    if (code1 != code2 || out1.str() != out2.str() || out1.str().empty()) {
      o.fail("'" + c[0] + "' output differs between runs");
    }
  }
  std::filesystem::remove_all(dir);
  if (o.ok) o.detail = std::to_string(commands.size()) + " commands byte-identical across runs";
  return o;
}

Outcome invariants() {
  Outcome o;
  // Cost additivity against the two-case criterion, m <= 10^5.
  for (long m = 2; m <= 100000; ++m) {
    const auto report = criterion::degree_cost(m);
    BigInt additive = 0;
    BigInt two_case = 0;
    for (const auto& e : report.terms) {
      additive += criterion::prime_power_cost(e.prime, e.exponent);
      if (!(m % 4 == 2 && e.prime == 2)) two_case += numtheory::totient_prime_power(e.prime, e.exponent);
    }
    if (report.total != additive || report.total != two_case) {
      o.fail("cost additivity breaks at m=" + std::to_string(m));
      break;
    }
  }
  // Free doubling and the support bound over S(g), g <= 20.
  for (int g = 1; g <= 20 && o.ok; ++g) {
    const Genus genus(g);
    for (const auto& m : criterion::enumerate_orders(genus)) {
      const auto f = numtheory::factor(m);
      if (f.size() > static_cast<std::size_t>(g + 1)) o.fail("too many primes in " + m.str());
      for (const auto& e : f.entries()) {
        if (e.prime > genus.prime_support_bound()) o.fail("prime above 2g+1 in " + m.str());
      }
      if (m % 2 == 1) {
        const auto odd = criterion::degree_cost(m);
        const auto doubled = criterion::is_member(2 * m, genus);
        if (!doubled.member || doubled.report.total != odd.total) {
          o.fail("free doubling breaks at m=" + m.str() + " g=" + std::to_string(g));
        }
      }
    }
  }
  // Monotonicity and evenness over g = 1..300.
  const auto rows = extremal::extremal_table(1, 300);
  for (std::size_t i = 0; i < rows.size() && o.ok; ++i) {
    if (rows[i].h % 2 != 0) o.fail("h(" + std::to_string(rows[i].g) + ") is odd");
    if (i > 0 && (rows[i].f < rows[i - 1].f || rows[i].h < rows[i - 1].h)) {
      o.fail("f or h decreases at g=" + std::to_string(rows[i].g));
    }
    if (!criterion::is_member(rows[i].h, Genus(rows[i].g)).member) {
      o.fail("h(" + std::to_string(rows[i].g) + ") is not a member");
    }
  }
  if (o.ok) {
    o.detail =
        "additivity m<=1e5; doubling and support g<=20; monotone, even h g<=300";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"oracle-equivalence", 10, oracle_equivalence},
      {"small-structure", 0, small_structure},
      {"witness-soundness", 60, witness_soundness},
      {"upper-bound-chain", 300, upper_chain},
      {"refined-upper-bound", 600, refined_upper},
      {"lower-bounds-from-L", 0, lower_bounds},
      {"prime-estimates", 300, prime_estimates},
      {"primorial-membership", 0, primorial_membership},
      {"determinism", 0, determinism},
      {"invariant-suite", 0, invariants},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) +
             " s");
    }
    char timing[64];
    if (c.limit_seconds > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", seconds, c.limit_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.name << " [" << timing << "] " << o.detail
              << std::endl;
    failures += !o.ok;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
