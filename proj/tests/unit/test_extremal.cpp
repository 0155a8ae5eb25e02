#include <gtest/gtest.h>

#include <cmath>

#include "sptorsion/errors.hpp"
#include "sptorsion/extremal.hpp"

using sptorsion::BigInt;
using sptorsion::Genus;
namespace ex = sptorsion::extremal;
namespace cr = sptorsion::criterion;

TEST(Extremal, SmallValues) {
  EXPECT_EQ(ex::count_orders(Genus(1)), 4);
  EXPECT_EQ(ex::count_orders(Genus(2)), 8);
  EXPECT_EQ(ex::maximal_order(Genus(1)), 6);
  EXPECT_EQ(ex::maximal_order(Genus(2)), 12);
  EXPECT_EQ(ex::maximal_order(Genus(3)), 30);

  const auto r = ex::max_order(Genus(1));
  EXPECT_EQ(r.h_factorization.entries(),
            (std::vector<sptorsion::numtheory::PrimePower>{{2, 1}, {3, 1}}));
}

TEST(Extremal, BruteForceExamples) {
  auto r = ex::brute_force_extremal(Genus(1));
  EXPECT_EQ(r.f, 4);
  EXPECT_EQ(r.h, 6);
  r = ex::brute_force_extremal(Genus(3));
  EXPECT_EQ(r.h, 30);
  EXPECT_EQ(cr::degree_cost(r.h).total, 6);
  EXPECT_THROW(ex::brute_force_extremal(Genus(31)), sptorsion::CapExceeded);
}

TEST(Extremal, DpMatchesOracleForGenusUpTo12) {
  for (int g = 1; g <= 12; ++g) {
    EXPECT_EQ(ex::max_order(Genus(g)), ex::brute_force_extremal(Genus(g))) << "g=" << g;
  }
}

TEST(Extremal, DpMatchesOracleAtLargerGenus) {
  for (int g : {20, 25}) {
    EXPECT_EQ(ex::max_order(Genus(g)), ex::brute_force_extremal(Genus(g))) << "g=" << g;
  }
}

TEST(Extremal, TableExamples) {
  const auto rows = ex::extremal_table(1, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].g, 1);
  EXPECT_EQ(rows[0].f, 4);
  EXPECT_EQ(rows[0].h, 6);
  EXPECT_EQ(rows[1].f, 8);
  EXPECT_EQ(rows[1].h, 12);
  EXPECT_EQ(rows[2].f, ex::brute_force_extremal(Genus(3)).f);
  EXPECT_EQ(rows[2].h, 30);
  EXPECT_EQ(ex::extremal_table(1, 1).size(), 1u);
  EXPECT_THROW(ex::extremal_table(0, 3), sptorsion::DomainError);
  EXPECT_THROW(ex::extremal_table(4, 3), sptorsion::DomainError);
}

TEST(Extremal, TableIsIndependentOfJobs) {
  ex::TableOptions serial;
  ex::TableOptions parallel;
  parallel.jobs = 4;
  EXPECT_EQ(ex::extremal_table(1, 40, serial), ex::extremal_table(1, 40, parallel));
}

TEST(Extremal, OracleModeAndCaps) {
  ex::TableOptions options;
  options.oracle = true;
  EXPECT_EQ(ex::extremal_table(1, 8, options).size(), 8u);
  options.oracle = false;
  EXPECT_THROW(ex::extremal_table(5000, 5001, options), sptorsion::CapExceeded);
  EXPECT_THROW(ex::count_orders(Genus(5001)), sptorsion::CapExceeded);
  EXPECT_THROW(ex::maximal_order(Genus(5001)), sptorsion::CapExceeded);
}

TEST(Extremal, MonotoneEvenAndWithinBudget) {
  const auto rows = ex::extremal_table(1, 150);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const Genus g(r.g);
    if (i > 0) {
      ASSERT_GE(r.f, rows[i - 1].f);
      ASSERT_GE(r.h, rows[i - 1].h);
    }
    ASSERT_EQ(r.h % 2, 0) << r.g;
    ASSERT_TRUE(cr::is_member(r.h, g).member);
    ASSERT_LE(cr::degree_cost(r.h).total, g.budget());
    ASSERT_EQ(r.h_factorization.value(), r.h);
    ASSERT_LE(r.f, r.h);
    ASSERT_LT(sptorsion::log_of(r.h), std::log(3.0) + 3.0 * r.g);
  }
}

TEST(Extremal, NothingAboveTheMaximumIsAMember) {
  for (int g = 1; g <= 30; ++g) {
    const Genus genus(g);
    const BigInt h = ex::maximal_order(genus);
    // Exhaustive over (h, 2h] where that is small, sampled otherwise.
    const BigInt step = h < 5000 ? BigInt(1) : h / 4999;
    for (BigInt m = h + 1; m <= 2 * h; m += step) {
      ASSERT_FALSE(cr::is_member(m, genus).member) << m << " g=" << g;
    }
  }
}
