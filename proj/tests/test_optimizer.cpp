#include <gtest/gtest.h>

#include "support.hpp"

namespace diskpath {
namespace {

using testing::line4;

TEST(CriticalScanner, Counts) {
  CriticalScanner sc(line4(), Variant::UnitUnweighted);
  EXPECT_EQ(sc.count(Interval{2.5, 3.5}), 2u);
  EXPECT_EQ(sc.count(Interval{3.5, 2.5}), 0u);
  EXPECT_EQ(sc.count(Interval{}), 6u);
  auto zero = testing::disks_at({{0, 0}, {1, 0}, {2, 0}}, {0, 0, 1});
  EXPECT_EQ(CriticalScanner(zero, Variant::MultiplicativeScale).count(Interval{}), 2u);
}

TEST(CriticalScanner, GridPathMatchesAllPairs) {
  for (Variant v : kAllVariants) {
    auto c = testing::random_case(400, v, 4);
    if (v == Variant::MultiplicativeScale) {
      for (auto& d : c.disks) d.radius += 0.05;
    }
    auto all = enumerate_criticals(c.disks, v).values;
    CriticalScanner sc(c.disks, v);
    for (std::size_t q : {std::size_t{0}, all.size() / 50, all.size() / 7, all.size() / 2}) {
      const Interval iv{-std::numeric_limits<double>::infinity(), all[q].value};
      std::vector<CriticalValue> want;
      for (const auto& cv : all) {
        if (iv.contains(cv.value)) want.push_back(cv);
      }
      EXPECT_EQ(sc.collect(iv), want) << variant_name(v);
    }
  }
}

TEST(ShrinkInterval, Examples) {
  auto p = line4();
  const Interval wide = shrink_interval(p, Variant::UnitUnweighted, 0, 3, Budget::hops(3), 6);
  EXPECT_EQ(wide.lo, -std::numeric_limits<double>::infinity());
  EXPECT_EQ(wide.hi, 6.0);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Interval iv = shrink_interval(p, Variant::UnitUnweighted, 0, 3, Budget::hops(3), 1, seed);
    auto inside = CriticalScanner(p, Variant::UnitUnweighted).collect(iv);
    ASSERT_FALSE(inside.empty());
    for (const auto& c : inside) EXPECT_EQ(c.value, 3.0);
  }

  EXPECT_THROW(shrink_interval(p, Variant::UnitWeighted, 0, 3, Budget::weight(5.0), 1), Infeasible);
}

TEST(GridScale, Examples) {
  auto p = line4();
  auto decide_k = [&](std::int64_t k) {
    return [&p, k](double r) { return decide(p, Variant::UnitUnweighted, 0, 3, Budget::hops(k), r); };
  };
  const GridScale one = grid_scale_sequence(6.0, 6.0, 0.25, decide_k(1));
  EXPECT_EQ(one.r_low, 6.0);

  const GridScale three = grid_scale_sequence(6.0, 2.0, 0.25, decide_k(3));
  EXPECT_GT(three.r_low, 2.4);
  EXPECT_LE(three.r_low, 3.0);
  EXPECT_GE(three.r_high, 3.0);
  EXPECT_LE(three.r_high, three.r_low * 1.25);

  std::vector<Disk> chain;
  for (int i = 0; i < 12; ++i) chain.push_back(Disk{i, {double(i), 0}, 0});
  const GridScale c = grid_scale_sequence(11.0, 1.0, 0.1, [&](double r) {
    return decide(chain, Variant::UnitUnweighted, 0, 11, Budget::hops(11), r);
  });
  EXPECT_LE(c.r_low, 1.0);
  EXPECT_GE(c.r_high, 1.0);
  EXPECT_LT(c.r_high, 1.1);

  EXPECT_THROW(grid_scale_sequence(6.0, 2.0, 0.3, decide_k(3)), InvalidParameter);
}

TEST(Solve, LineInstanceAnyParameters) {
  auto p = line4();
  for (std::uint64_t L : {1, 2, 6}) {
    for (std::uint64_t X : {1, 2, 5}) {
      for (std::uint64_t Y : {1, 4, 100}) {
        SolveOptions opt;
        opt.params = PhaseParams{L, X, Y};
        opt.debug = true;
        EXPECT_EQ(solve(p, Variant::UnitUnweighted, 0, 3, Budget::hops(3), opt).answer.value, 3.0);
        EXPECT_EQ(solve(p, Variant::UnitUnweighted, 0, 3, Budget::hops(1), opt).answer.value, 6.0);
        EXPECT_EQ(solve(p, Variant::UnitWeighted, 0, 3, Budget::weight(6.0), opt).answer.value, 3.0);
      }
    }
  }
}

TEST(Solve, SourceEqualsTargetAndZeroHops) {
  auto p = line4();
  const SolveResult r = solve(p, Variant::UnitUnweighted, 1, 1, Budget::hops(0));
  EXPECT_EQ(r.answer.value, 0.0);
  EXPECT_EQ(r.path.path, (std::vector<int>{1}));
  EXPECT_THROW(solve(p, Variant::UnitUnweighted, 0, 3, Budget::hops(0)), Infeasible);
  EXPECT_THROW(solve(p, Variant::UnitWeighted, 0, 3, Budget::weight(5.99)), Infeasible);
}

TEST(Solve, OnePhaseWhenBudgetsAreLarge) {
  auto c = testing::random_case(40, Variant::DisksUnweighted, 8);
  SolveOptions opt;
  opt.params = PhaseParams{1000, 100000, 1000000};
  const SolveResult r = solve(c.disks, Variant::DisksUnweighted, c.s, c.t, c.budget, opt);
  EXPECT_LE(r.stats.phases, 1u);
  EXPECT_EQ(r.answer.value, solve_naive(c.disks, Variant::DisksUnweighted, c.s, c.t, c.budget).value);
}

TEST(Solve, MatchesBruteForceOnSmallInstances) {
  for (Variant v : kAllVariants) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto c = testing::random_case(18 + 3 * static_cast<int>(seed), v, 500 + seed);
      const RspAnswer want = solve_naive(c.disks, v, c.s, c.t, c.budget);
      SolveOptions opt;
      opt.seed = seed;
      opt.debug = true;
      opt.params = PhaseParams{2 + seed % 5, 1 + seed % 3, 1 + 7 * (seed % 4)};
      if (!want.feasible) {
        EXPECT_THROW(solve(c.disks, v, c.s, c.t, c.budget, opt), Infeasible);
        continue;
      }
      const SolveResult got = solve(c.disks, v, c.s, c.t, c.budget, opt);
      EXPECT_EQ(got.answer.value, want.value) << variant_name(v) << " seed " << seed;
      EXPECT_TRUE(got.stats.phase_bounds_hold());
    }
  }
}

TEST(Solve, TranscriptIsDeterministic) {
  auto c = testing::random_case(60, Variant::DisksWeightedCenters, 3);
  SolveOptions opt;
  opt.seed = 17;
  opt.params = PhaseParams{20, 3, 40};
  const auto a = solve(c.disks, Variant::DisksWeightedCenters, c.s, c.t, c.budget, opt);
  const auto b = solve(c.disks, Variant::DisksWeightedCenters, c.s, c.t, c.budget, opt);
  EXPECT_FALSE(a.stats.transcript.empty());
  EXPECT_EQ(a.stats.transcript, b.stats.transcript);
}

TEST(Solve, DefaultParameters) {
  const PhaseParams u = default_phase_params(1000, true, 100);
  EXPECT_EQ(u.L, 16u);  // ceil(1000^0.4)
  EXPECT_EQ(u.X, 13u);  // ceil(sqrt(16 log2 1000))
  EXPECT_EQ(u.Y, 79u);  // ceil(100 sqrt(log2 1000) / 4)
  const PhaseParams g = default_phase_params(1000, false, 100);
  EXPECT_EQ(g.L, 32u);
  EXPECT_EQ(default_phase_params(1000, false, 1).Y, 16u);
}

}  // namespace
}  // namespace diskpath
