#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>

#include "sptorsion/bounds.hpp"
#include "sptorsion/errors.hpp"

namespace bd = sptorsion::bounds;
using bd::Check;
using bd::Status;

namespace {

double as_double(const std::string& s) { return std::stod(s); }

}  // namespace

TEST(Thresholds, ScannedValues) {
  const int k = bd::threshold_k();
  EXPECT_GE(k * std::log(k), 529.0);
  EXPECT_LT((k - 1) * std::log(k - 1), 529.0);
  EXPECT_EQ(k, 113);

  const int l = bd::threshold_l();
  EXPECT_GE(l * std::log(l), 3025.0);
  EXPECT_LT((l - 1) * std::log(l - 1), 3025.0);
  EXPECT_EQ(l, 489);
}

TEST(CheckNames, RoundTrip) {
  EXPECT_EQ(bd::all_checks().size(), 13u);
  for (Check c : bd::all_checks()) EXPECT_EQ(bd::parse_check(bd::check_name(c)), c);
  EXPECT_FALSE(bd::parse_check("nosuch").has_value());
  EXPECT_EQ(bd::status_name(Status::precondition_unmet), "precondition-unmet");
}

TEST(UpperBounds, FirstGenera) {
  const auto rows = bd::run_check(Check::thm31, {1, 2});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].pass());
  EXPECT_EQ(rows[0].lhs, "6");
  EXPECT_NEAR(as_double(rows[0].rhs), 60.2566, 1e-3);
  EXPECT_EQ(rows[1].lhs, "12");
  EXPECT_NEAR(as_double(rows[1].rhs), 1210.29, 1e-2);

  for (const auto& r : bd::run_check(Check::cor32, {1, 60})) EXPECT_TRUE(r.pass()) << r.point;
}

TEST(UpperBounds, RefinedBoundNeedsItsThreshold) {
  const auto rows = bd::check_upper_bounds({1480, 1486});
  std::size_t unmet = 0;
  std::size_t remark_pass = 0;
  for (const auto& r : rows) {
    if (r.name == "remark-upper") {
      if (r.status == Status::precondition_unmet) ++unmet;
      if (r.pass()) ++remark_pass;
    } else {
      EXPECT_TRUE(r.pass()) << r.name << " " << r.point;
    }
  }
  EXPECT_EQ(unmet, 6u);
  EXPECT_EQ(remark_pass, 1u);
  EXPECT_EQ(bd::count_failures(rows), 0u);
}

TEST(LowerBounds, PreconditionAndThreshold) {
  const int l = bd::threshold_l();
  const auto below = bd::run_check(Check::thm36, {l - 2, l - 1});
  for (const auto& r : below) {
    EXPECT_EQ(r.status, Status::precondition_unmet);
    EXPECT_FALSE(r.pass());
  }
  EXPECT_EQ(bd::count_failures(below), 0u);
  for (Check c : {Check::thm36, Check::cor37}) {
    const auto at = bd::run_check(c, {l, l});
    ASSERT_EQ(at.size(), 1u);
    EXPECT_TRUE(at[0].pass());
  }
}

TEST(LowerBounds, ImprovedBoundIsGatedAndCapped) {
  const auto rows = bd::run_check(Check::remark_lower, {100, 101});
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_EQ(r.status, Status::precondition_unmet);
  // First applicable genus lies far above the default DP cap.
  EXPECT_THROW(bd::run_check(Check::remark_lower, {40000, 40000}), sptorsion::CapExceeded);
}

TEST(AuxiliaryBounds, PrimeSumAtTwentyThree) {
  const auto rows = bd::run_check(Check::lemma33, {23, 23});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].lhs, "100");
  EXPECT_EQ(rows[0].rhs, "103.5");
  EXPECT_EQ(rows[0].margin, "3.5");
  EXPECT_TRUE(rows[0].pass());

  const auto below = bd::run_check(Check::lemma33, {22, 22});
  EXPECT_EQ(below[0].status, Status::precondition_unmet);
}

TEST(AuxiliaryBounds, PrimorialMembershipAtK) {
  const int k = bd::threshold_k();
  const auto rows = bd::run_check(Check::lemma35, {k, k});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].name, "lemma35");
  EXPECT_EQ(rows[1].name, "lemma35.beta");
  for (const auto& r : rows) EXPECT_TRUE(r.pass()) << r.name;

  for (const auto& r : bd::run_check(Check::lemma34, {k, k + 50})) {
    EXPECT_TRUE(r.pass()) << r.name << " " << r.point;
  }
  EXPECT_EQ(bd::run_check(Check::lemma35, {k - 1, k - 1})[0].status,
            Status::precondition_unmet);
}

TEST(PrimeEstimates, Examples) {
  const auto sum = bd::run_check(Check::dusart_sum, {9, 9});
  ASSERT_EQ(sum.size(), 1u);
  EXPECT_EQ(sum[0].lhs, "100");
  EXPECT_EQ(sum[0].rhs, "103.5");
  EXPECT_TRUE(sum[0].pass());

  const auto rosser = bd::run_check(Check::rosser, {55, 55});
  EXPECT_EQ(rosser[0].lhs, "16");
  EXPECT_NEAR(as_double(rosser[0].rhs), 55.0 / (std::log(55.0) + 2), 1e-9);
  EXPECT_TRUE(rosser[0].pass());

  const auto pi = bd::run_check(Check::dusart_pi, {2, 2});
  for (const auto& r : pi) {
    if (r.name == "dusart-pi.upper") EXPECT_TRUE(r.pass());
    if (r.name == "dusart-pi.lower") EXPECT_EQ(r.status, Status::precondition_unmet);
  }

  const auto product = bd::run_check(Check::dusart_product, {2973, 2973});
  EXPECT_TRUE(product[0].pass());
  EXPECT_EQ(bd::run_check(Check::dusart_product, {2972, 2972})[0].status,
            Status::precondition_unmet);
}

TEST(PrimeEstimates, CombinedSweepHasNoFailures) {
  const auto rows = bd::check_prime_estimates({2, 5000}, {9, 2000});
  EXPECT_EQ(bd::count_failures(rows), 0u);
}

TEST(Reports, MarginSignMatchesStatus) {
  auto rows = bd::check_lemmas({20, 3000}, {100, 200});
  for (auto& r : bd::run_check(Check::thm31, {1, 40})) rows.push_back(r);
  for (const auto& r : rows) {
    if (r.status == Status::precondition_unmet) continue;
    EXPECT_TRUE(r.pass());
    EXPECT_GT(as_double(r.margin), 0.0) << r.name << " " << r.point;
  }
}

TEST(Reports, ReproducibleAndSerializable) {
  const auto a = bd::run_check(Check::rosser, {55, 400});
  const auto b = bd::run_check(Check::rosser, {55, 400});
  EXPECT_EQ(a, b);
  EXPECT_EQ(bd::to_json(a), bd::to_json(b));

  const auto csv = bd::to_csv(a);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,variable,point,relation,lhs,rhs,margin,pass,status");
  const auto doc = nlohmann::json::parse(bd::to_json(a));
  ASSERT_EQ(doc.size(), a.size());
  EXPECT_TRUE(doc[0]["lhs"].is_string());
  EXPECT_EQ(doc[0]["status"], "pass");
}

TEST(Reports, RangeValidation) {
  EXPECT_THROW(bd::run_check(Check::thm31, {5, 4}), sptorsion::DomainError);
  EXPECT_THROW(bd::run_check(Check::thm31, {0, 4}), sptorsion::DomainError);
  EXPECT_THROW(bd::run_check(Check::thm31, {5001, 5001}), sptorsion::CapExceeded);
}

TEST(Reports, ParallelGenusSweepMatchesSerial) {
  bd::Options parallel;
  parallel.jobs = 3;
  EXPECT_EQ(bd::check_upper_bounds({1, 30}), bd::check_upper_bounds({1, 30}, parallel));
}
