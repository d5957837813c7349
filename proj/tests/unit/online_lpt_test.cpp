#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mcover/mcover.hpp"
#include "oracles.hpp"

using namespace mcover;

namespace {

const Rational kEps(1, 8);

std::vector<StreamSpec> random_streams(std::size_t count, std::size_t n) {
  std::vector<StreamSpec> out;
  for (std::uint64_t seed = 0; seed < count; ++seed) {
    out.push_back(gen_random(seed, n, 2 + seed % 3, static_cast<SizeLaw>(seed % 3)));
  }
  return out;
}

}  // namespace

TEST(VerifyBigRestriction, Examples) {
  const auto ctx = build_context(Rational(1, 2), Rational(16));
  Instance inst(3);
  inst.add(make_job(0, Rational(20), Rational(1, 2)));
  inst.add(make_job(1, Rational(24), Rational(1, 2)));
  Schedule s(3);
  s.assign(inst.jobs()[0], 0);
  s.assign(inst.jobs()[1], 0);
  EXPECT_FALSE(verify_big_restriction(s, inst, ctx));
  s.move(1, 2);
  EXPECT_TRUE(verify_big_restriction(s, inst, ctx));
  EXPECT_TRUE(verify_big_restriction(Schedule(3), Instance(3), ctx));
}

TEST(VerifyBigRestriction, IgnoresSmallJobs) {
  const auto ctx = build_context(Rational(1, 2), Rational(16));
  Instance inst(2);
  inst.add(make_job(0, Rational(12), Rational(1, 2)));
  inst.add(make_job(1, Rational(1), Rational(1, 2)));
  inst.add(make_job(2, Rational(1), Rational(1, 2)));
  Schedule s(2);
  s.assign(inst.jobs()[0], 0);
  s.assign(inst.jobs()[1], 0);
  s.assign(inst.jobs()[2], 0);
  EXPECT_TRUE(verify_big_restriction(s, inst, ctx));
}

TEST(OnlineLpt, FirstArrival) {
  OnlineLptSession session(3, kEps);
  const auto led = session.insert(0, Rational(7));
  EXPECT_TRUE(led.moves.empty());
  EXPECT_EQ(led.factor, Rational(0));
  EXPECT_EQ(session.schedule().machine_of(0), 0u);
  EXPECT_THROW(session.insert(0, Rational(1)), std::invalid_argument);
}

TEST(OnlineLpt, CompetitiveOnSmallExample) {
  for (const auto& order : std::vector<std::vector<long>>{{3, 3, 2, 2, 2}, {2, 2, 2, 3, 3}, {2, 3, 2, 3, 2}}) {
    OnlineLptSession session(2, kEps);
    Instance inst(2);
    JobId id = 0;
    for (long p : order) {
      inst.add(make_job(id, Rational(p), kEps));
      session.insert(id++, Rational(p));
    }
    const Rational ratio = competitive_check(session.schedule(), inst);
    EXPECT_LE(ratio, Rational(6, 5) * (Rational(1) + Rational(2) * kEps) / (Rational(1) - kEps));
  }
}

TEST(OnlineLpt, SmallArrivalKeepsBigJobs) {
  OnlineLptSession session(3, kEps);
  JobId id = 0;
  for (long p : {8, 8, 7, 6, 6, 5}) session.insert(id++, Rational(p));
  const auto& ctx = session.context();
  const Job tiny = make_job(50, Rational(1, 8), kEps);
  ASSERT_EQ(ctx.classify(tiny.rounded), JobClass::Small);
  const auto led = session.insert(50, Rational(1, 8));
  for (const auto& mv : led.moves) {
    EXPECT_EQ(session.context().classify(mv.rounded), JobClass::Small);
  }
}

TEST(OnlineLpt, RejectsCorruptState) {
  Schedule s(3);
  s.assign(make_job(0, Rational(4), kEps), 0);
  s.assign(make_job(1, Rational(4), kEps), 0);
  s.assign(make_job(2, Rational(4), kEps), 1);
  OnlineLptSession session = OnlineLptSession::resume(s, kEps);
  EXPECT_THROW(session.insert(9, Rational(4)), InvariantViolation);
  OnlineLptSession lax = OnlineLptSession::resume(s, kEps, OnlineLptOptions{false});
  EXPECT_NO_THROW(lax.insert(9, Rational(4)));
}

TEST(OnlineLptProperty, InvariantsAfterEveryArrival) {
  for (const StreamSpec& spec : random_streams(80, 14)) {
    OnlineLptSession session(spec.machines, kEps);
    for (const auto& e : spec.arrivals) {
      const auto led = session.insert(e.id, e.size);
      const auto& ctx = session.context();
      const Schedule& s = session.schedule();
      s.audit();
      ASSERT_TRUE(led.consistent());
      ASSERT_TRUE(verify_big_restriction(s, session.instance(), ctx)) << spec.family << " job " << e.id;
      ASSERT_TRUE(led.trace.has_value());
      ASSERT_TRUE(led.trace->growth_bound_holds());
      for (const auto& mv : led.moves) ASSERT_NE(ctx.classify(mv.rounded), JobClass::Huge);
      const std::set<JobId> once(led.rebalanced.begin(), led.rebalanced.end());
      ASSERT_EQ(once.size(), led.rebalanced.size());
      if (ctx.classify(led.arrival.rounded) == JobClass::Small && !ctx.degenerate()) {
        for (const auto& mv : led.moves) ASSERT_EQ(ctx.classify(mv.rounded), JobClass::Small);
      }
    }
  }
}

TEST(OnlineLptProperty, RelaxedVersionOfLpt) {
  for (const StreamSpec& spec : random_streams(80, 14)) {
    OnlineLptSession session(spec.machines, kEps);
    for (const auto& e : spec.arrivals) {
      session.insert(e.id, e.size);
      const auto& ctx = session.context();
      if (ctx.degenerate()) continue;
      const Rational opt = brute_force_opt(session.instance(), Measure::Rounded);
      const Rational k = ctx.small_threshold() / (kEps * opt);
      const Schedule ref = lpt_reference(session.schedule(), session.instance(), ctx);
      ASSERT_TRUE(is_lpt_solution(ref, session.instance()));
      const auto cert = check_relaxed(session.schedule(), ref, k, k, kEps, opt);
      ASSERT_TRUE(cert.witnessed) << spec.family << " job " << e.id;
    }
  }
}

TEST(OnlineLptProperty, PhaseTraceShape) {
  OnlineLptSession session(3, Rational(1, 4));
  JobId id = 0;
  for (long p : {9, 4, 4, 3, 7, 2, 2, 6}) {
    const auto led = session.insert(id++, Rational(p));
    const auto& ctx = session.context();
    ASSERT_EQ(led.trace->phases.size(), ctx.ladder().size() + 1);
    for (std::size_t h = 1; h < led.trace->phases.size(); ++h) {
      ASSERT_EQ(*led.trace->phases[h].q, ctx.ladder()[h - 1]);
    }
    ASSERT_FALSE(led.trace->phases[0].q.has_value());
  }
}
