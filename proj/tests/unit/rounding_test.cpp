#include <gtest/gtest.h>

#include <random>

#include "mcover/mcover.hpp"
#include "oracles.hpp"

using namespace mcover;

TEST(RoundSize, Examples) {
  EXPECT_EQ(round_size(Rational(8), Rational(1, 4)), Rational(8));
  EXPECT_EQ(round_size(Rational(11), Rational(1, 4)), Rational(10));
  EXPECT_EQ(round_size(Rational(10), Rational(1, 2)), Rational(8));
  EXPECT_EQ(round_size(Rational(3, 16), Rational(1, 2)), Rational(3, 16));
  EXPECT_EQ(round_size(Rational(7, 32), Rational(1, 2)), Rational(3, 16));
}

TEST(RoundSize, RejectsBadInput) {
  EXPECT_THROW(round_size(Rational(0), Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(round_size(Rational(-1), Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(round_size(Rational(1), Rational(2, 3)), std::invalid_argument);
  EXPECT_THROW(round_size(Rational(1), Rational(1)), std::invalid_argument);
  EXPECT_THROW(make_job(0, Rational(0), Rational(1, 2)), std::invalid_argument);
}

TEST(RoundSize, UnitFraction) {
  EXPECT_TRUE(is_unit_fraction(Rational(1, 2)));
  EXPECT_TRUE(is_unit_fraction(Rational(1, 64)));
  EXPECT_FALSE(is_unit_fraction(Rational(1)));
  EXPECT_FALSE(is_unit_fraction(Rational(2, 5)));
  EXPECT_FALSE(is_unit_fraction(Rational(-1, 2)));
}

TEST(RoundSizeProperty, MatchesSearchAndBounds) {
  std::mt19937_64 rng(11);
  for (long k : {2, 3, 4, 8}) {
    const Rational eps(1, k);
    for (int t = 0; t < 300; ++t) {
      const Rational p(static_cast<long>(1 + rng() % 5000), static_cast<long>(1 + rng() % 97));
      const Rational r = round_size(p, eps);
      ASSERT_EQ(r, oracle::naive_round(p, eps)) << p;
      ASSERT_LE(r, p);
      ASSERT_LE((Rational(1) - eps) * p, r);
      ASSERT_EQ(round_size(r, eps), r);
    }
  }
}

TEST(RoundSizeProperty, Monotone) {
  const Rational eps(1, 4);
  Rational prev = round_size(Rational(1, 64), eps);
  for (long n = 2; n <= 2000; ++n) {
    const Rational cur = round_size(Rational(n, 64), eps);
    ASSERT_LE(prev, cur);
    prev = cur;
  }
}

TEST(ComputeUb, Examples) {
  Instance a(2);
  JobId id = 0;
  for (long p : {3, 3, 2, 2, 2}) a.add(make_job(id++, Rational(p), Rational(1, 2)));
  EXPECT_EQ(compute_ub(a), Rational(10));
  EXPECT_EQ(compute_ub(Instance(2)), Rational(0));
  Instance c(1);
  c.add(make_job(0, Rational(4), Rational(1, 2)));
  EXPECT_EQ(compute_ub(c), Rational(8));
}

TEST(Context, Examples) {
  const auto a = build_context(Rational(1, 2), Rational(16));
  EXPECT_EQ(a.ell(), 3);
  EXPECT_EQ(a.u(), 3);
  EXPECT_EQ(a.grid(), Rational(4));
  EXPECT_EQ(a.ladder(), (std::vector<Rational>{Rational(12), Rational(8)}));

  const auto b = build_context(Rational(1, 4), Rational(16));
  EXPECT_EQ(b.ell(), 2);
  EXPECT_EQ(b.u(), 3);
  std::vector<Rational> want;
  for (long v : {14, 12, 10, 8, 7, 6, 5, 4}) want.emplace_back(v);
  EXPECT_EQ(b.ladder(), want);

  const auto c = build_context(Rational(1, 2), Rational(0));
  EXPECT_TRUE(c.degenerate());
  EXPECT_TRUE(c.ladder().empty());
  EXPECT_EQ(c.classify(Rational(1, 1000)), JobClass::Huge);
  EXPECT_THROW((void)c.ell(), std::logic_error);
}

TEST(Context, NonPowerUb) {
  const auto ctx = build_context(Rational(1, 4), Rational(10));
  EXPECT_EQ(ctx.ell(), 2);  // 2^2 >= 10/4
  EXPECT_EQ(ctx.u(), 3);    // 2^3 < 10
}

TEST(Classify, Examples) {
  const auto ctx = build_context(Rational(1, 2), Rational(16));
  EXPECT_EQ(classify(Rational(12), ctx), JobClass::Big);
  EXPECT_EQ(classify(Rational(2), ctx), JobClass::Small);
  EXPECT_EQ(classify(Rational(16), ctx), JobClass::Huge);
  EXPECT_EQ(classify(Rational(8), ctx), JobClass::Big);
  EXPECT_EQ(ctx.ladder_index(Rational(12)), 1u);
  EXPECT_EQ(ctx.ladder_index(Rational(8)), 2u);
  EXPECT_FALSE(ctx.ladder_index(Rational(9)).has_value());
}

TEST(ContextProperty, LadderOnGridAndBounded) {
  std::mt19937_64 rng(5);
  for (long k : {2, 4, 8, 16}) {
    const Rational eps(1, k);
    for (int t = 0; t < 50; ++t) {
      const Rational ub(static_cast<long>(1 + rng() % 4000), static_cast<long>(1 + rng() % 50));
      const auto ctx = build_context(eps, ub);
      const long lg = floor_log2(Rational(k));
      ASSERT_LE(Rational(static_cast<long>(ctx.ladder().size())), Rational(k * (lg + 1)));
      ASSERT_EQ(static_cast<long>(ctx.ladder().size()), (ctx.u() - ctx.ell() + 1) * k);
      for (const Rational& q : ctx.ladder()) {
        ASSERT_TRUE((q / ctx.grid()).is_integer());
        ASSERT_EQ(round_size(q, eps), q);
        ASSERT_EQ(classify(q, ctx), JobClass::Big);
      }
      ASSERT_TRUE(std::is_sorted(ctx.ladder().rbegin(), ctx.ladder().rend()));
    }
  }
}

// Every rounded size that is not small is a grid multiple.
TEST(ContextProperty, BigAndHugeAreGridMultiples) {
  std::mt19937_64 rng(9);
  const Rational eps(1, 8);
  for (int t = 0; t < 200; ++t) {
    const Rational ub(static_cast<long>(1 + rng() % 300), static_cast<long>(1 + rng() % 7));
    const auto ctx = build_context(eps, ub);
    for (int s = 0; s < 20; ++s) {
      const Rational r = round_size(Rational(static_cast<long>(1 + rng() % 3000), 17), eps);
      if (classify(r, ctx) != JobClass::Small) ASSERT_TRUE((r / ctx.grid()).is_integer()) << r << " " << ub;
    }
  }
}
