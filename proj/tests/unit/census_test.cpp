#include <gtest/gtest.h>

#include "mcover/mcover.hpp"
#include "oracles.hpp"

using namespace mcover;

TEST(Census, PowersOfTwoEnumerationAgreesWithPartitionCount) {
  for (unsigned i = 0; i <= 5; ++i) {
    const std::size_t got = count_multisets_with_total(CensusMode::PowersOfTwo, Rational(1, 2), pow2(i), Rational(1));
    EXPECT_EQ(got, oracle::binary_partitions(std::size_t{1} << i)) << i;
  }
}

TEST(Census, RecurrenceValues) {
  EXPECT_EQ(powers_of_two_recurrence(0), 1);
  EXPECT_EQ(powers_of_two_recurrence(1), 2);
  EXPECT_EQ(powers_of_two_recurrence(2), 4);
  EXPECT_EQ(powers_of_two_recurrence(3), 11);
}

TEST(Census, RecurrenceMatchesEnumerationUpToTwo) {
  for (unsigned i = 0; i <= 2; ++i) {
    EXPECT_EQ(Integer(static_cast<unsigned long>(
                  count_multisets_with_total(CensusMode::PowersOfTwo, Rational(1, 2), pow2(i), Rational(1)))),
              powers_of_two_recurrence(i));
  }
}

TEST(Census, GeometricTotalsDistinct) {
  const Rational eps(1, 3);
  const auto r = distinct_load_census(CensusMode::Geometric, eps, Rational(1), eps);
  EXPECT_TRUE(r.all_distinct);
  EXPECT_EQ(r.multisets, r.distinct_totals);
  EXPECT_GT(r.multisets, 1u);
}

TEST(Census, ArithmeticCountBounded) {
  const Rational eps(1, 2), ub(16);
  const auto ctx = build_context(eps, ub);
  const auto r = distinct_load_census(CensusMode::Arithmetic, eps, Rational(2) * ub, ctx.small_threshold());
  EXPECT_LE(r.distinct_totals, 9u);
  for (const auto& [total, n] : r.totals) EXPECT_TRUE((total / ctx.grid()).is_integer());
}

TEST(Census, Sizes) {
  const auto a = census_sizes(CensusMode::Arithmetic, Rational(1, 2), Rational(32), Rational(8));
  EXPECT_EQ(a, (std::vector<Rational>{Rational(32), Rational(24), Rational(16), Rational(12), Rational(8)}));
  const auto p = census_sizes(CensusMode::PowersOfTwo, Rational(1, 2), Rational(8), Rational(1));
  EXPECT_EQ(p, (std::vector<Rational>{Rational(8), Rational(4), Rational(2), Rational(1)}));
  const auto g = census_sizes(CensusMode::Geometric, Rational(1), Rational(4), Rational(1, 2));
  EXPECT_EQ(g, (std::vector<Rational>{Rational(4), Rational(2), Rational(1), Rational(1, 2)}));
  EXPECT_THROW(census_sizes(CensusMode::PowersOfTwo, Rational(1, 2), Rational(1), Rational(2)),
               std::invalid_argument);
}

TEST(Census, GuardTrips) {
  EXPECT_THROW(distinct_load_census(CensusMode::Arithmetic, Rational(1, 16), Rational(64), Rational(1, 4), 1000),
               BudgetExceeded);
}
