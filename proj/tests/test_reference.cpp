#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

namespace diskpath {
namespace {

using testing::disks_at;
using testing::line3_disks;
using testing::line4;

std::vector<std::pair<int, int>> edge_list(const ExplicitGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < g.n; ++a) {
    for (auto [b, w] : g.adjacency[a]) {
      if (static_cast<int>(a) < b) out.emplace_back(static_cast<int>(a), b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BuildGraph, BoundaryInclusive) {
  auto two = disks_at({{0, 0}, {3, 4}});
  EXPECT_EQ(edge_list(build_graph(two, Variant::UnitUnweighted, 5.0)).size(), 1u);
  EXPECT_EQ(edge_list(build_graph(two, Variant::UnitUnweighted, 4.99)).size(), 0u);
  auto three = disks_at({{0, 0}, {1, 0}, {3, 0}});
  using E = std::vector<std::pair<int, int>>;
  EXPECT_EQ(edge_list(build_graph(three, Variant::UnitUnweighted, 2.0)), (E{{0, 1}, {1, 2}}));
}

TEST(BfsHops, Examples) {
  auto path = disks_at({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  auto g = build_graph(path, Variant::UnitUnweighted, 1.0);
  EXPECT_EQ(bfs_hops(g, 0, 3), 3);
  EXPECT_EQ(bfs_hops(g, 2, 2), 0);
  auto apart = disks_at({{0, 0}, {10, 0}});
  EXPECT_FALSE(bfs_hops(build_graph(apart, Variant::UnitUnweighted, 1.0), 0, 1));
}

TEST(DijkstraWeight, Examples) {
  auto chain = disks_at({{0, 0}, {3, 0}, {6, 0}});
  auto g = build_graph(chain, Variant::UnitWeighted, 3.0);
  EXPECT_DOUBLE_EQ(*dijkstra_weight(g, 0, 2), 6.0);
  EXPECT_EQ(dijkstra_weight(g, 1, 1), 0.0);
  EXPECT_FALSE(dijkstra_weight(build_graph(chain, Variant::UnitWeighted, 2.0), 0, 2));
}

TEST(EnumerateCriticals, LineInstance) {
  auto list = enumerate_criticals(line4(), Variant::UnitUnweighted);
  std::vector<double> values;
  for (const auto& c : list.values) values.push_back(c.value);
  EXPECT_EQ(values, (std::vector<double>{1, 2, 3, 3, 5, 6}));
  EXPECT_EQ(list.degenerate, 0u);
}

TEST(EnumerateCriticals, SmallAndDegenerate) {
  auto two = disks_at({{0, 0}, {2, 0}});
  EXPECT_EQ(enumerate_criticals(two, Variant::UnitUnweighted).values.size(), 1u);
  auto zero = disks_at({{0, 0}, {2, 0}, {5, 0}});
  auto list = enumerate_criticals(zero, Variant::MultiplicativeScale);
  EXPECT_TRUE(list.values.empty());
  EXPECT_EQ(list.degenerate, 3u);
}

TEST(SolveNaive, LineInstanceGolden) {
  auto p = line4();
  EXPECT_EQ(solve_naive(p, Variant::UnitUnweighted, 0, 3, Budget::hops(3)).value, 3.0);
  EXPECT_EQ(solve_naive(p, Variant::UnitUnweighted, 0, 3, Budget::hops(1)).value, 6.0);
  const RspAnswer w = solve_naive(p, Variant::UnitWeighted, 0, 3, Budget::weight(6.0));
  EXPECT_TRUE(w.feasible);
  EXPECT_EQ(w.value, 3.0);
  ASSERT_TRUE(w.critical);
  EXPECT_EQ(w.critical->first, 0);
  EXPECT_EQ(w.critical->second, 2);
}

TEST(SolveNaive, SourceEqualsTarget) {
  const RspAnswer a = solve_naive(line4(), Variant::UnitUnweighted, 2, 2, Budget::hops(0));
  EXPECT_TRUE(a.feasible);
  EXPECT_EQ(a.value, 0.0);
  EXPECT_FALSE(a.critical);
}

TEST(SolveNaive, ZeroHopsInfeasible) {
  EXPECT_FALSE(solve_naive(line4(), Variant::UnitUnweighted, 0, 3, Budget::hops(0)).feasible);
}

TEST(DecideNaive, DiskExamples) {
  auto d = line3_disks();
  EXPECT_FALSE(decide_naive(d, Variant::DisksUnweighted, 0, 2, Budget::hops(2), 3.0));
  EXPECT_TRUE(decide_naive(d, Variant::DisksUnweighted, 0, 2, Budget::hops(2), 4.0));
  EXPECT_TRUE(decide_naive(d, Variant::DisksWeightedGaps, 0, 2, Budget::weight(7.0), 4.0));
  EXPECT_FALSE(decide_naive(d, Variant::DisksWeightedGaps, 0, 2, Budget::weight(6.9), 4.0));
}

TEST(Budgets, Validation) {
  auto p = line4();
  EXPECT_THROW(decide_naive(p, Variant::UnitWeighted, 0, 3, Budget::hops(2), 1.0), InvalidParameter);
  EXPECT_THROW(decide_naive(p, Variant::UnitUnweighted, 0, 3, Budget::weight(2), 1.0),
               InvalidParameter);
  EXPECT_THROW(decide_naive(p, Variant::UnitUnweighted, 0, 9, Budget::hops(2), 1.0), InvalidVertex);
  EXPECT_THROW(decide_naive(p, Variant::UnitUnweighted, 0, 3, Budget::hops(-1), 1.0),
               InvalidParameter);
}

// Minimax-path bottleneck by union-find over sorted edges: with an unlimited
// hop budget the optimum is the first edge that joins s and t.
double bottleneck(const std::vector<Disk>& d, Variant v, int s, int t) {
  auto list = enumerate_criticals(d, v).values;
  std::vector<int> parent(d.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : list) {
    parent[find(c.first)] = find(c.second);
    if (find(s) == find(t)) return c.value;
  }
  return -1;
}

TEST(SolveNaive, UnlimitedHopsGiveMinimaxBottleneck) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    for (Variant v : {Variant::UnitUnweighted, Variant::DisksUnweighted, Variant::AdditiveScale,
                      Variant::MultiplicativeScale}) {
      auto c = testing::random_case(20, v, seed);
      if (v == Variant::MultiplicativeScale) {
        for (auto& disk : c.disks) disk.radius += 0.1;
      }
      const int n = static_cast<int>(c.disks.size());
      const RspAnswer a = solve_naive(c.disks, v, c.s, c.t, Budget::hops(n - 1));
      ASSERT_TRUE(a.feasible);
      EXPECT_EQ(a.value, bottleneck(c.disks, v, c.s, c.t)) << variant_name(v) << " seed " << seed;
    }
  }
}

TEST(SolveNaive, MonotoneInTheParameter) {
  for (Variant v : kAllVariants) {
    auto c = testing::random_case(24, v, 5);
    auto list = enumerate_criticals(c.disks, v).values;
    bool seen_true = false;
    for (const auto& cv : list) {
      const bool f = decide_naive(c.disks, v, c.s, c.t, c.budget, cv.value);
      EXPECT_FALSE(seen_true && !f) << variant_name(v);
      seen_true = seen_true || f;
    }
  }
}

}  // namespace
}  // namespace diskpath
