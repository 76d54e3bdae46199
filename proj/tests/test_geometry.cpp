#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace diskpath {
namespace {

using testing::disks_at;

TEST(GapDistance, Examples) {
  auto d = disks_at({{0, 0}, {5, 0}}, {1, 1});
  EXPECT_DOUBLE_EQ(gap_distance(d[0], d[1]), 3.0);
  EXPECT_DOUBLE_EQ(gap_distance(d[0], d[0]), -2.0);
  auto e = disks_at({{0, 0}, {3, 4}}, {2, 1});
  EXPECT_DOUBLE_EQ(gap_distance(e[0], e[1]), 2.0);
}

TEST(GapDistance, SymmetricAndConsistentWithCenters) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-50, 50), r(0, 5);
  for (int i = 0; i < 1000; ++i) {
    Disk a{0, {c(rng), c(rng)}, r(rng)};
    Disk b{1, {c(rng), c(rng)}, r(rng)};
    EXPECT_EQ(gap_distance(a, b), gap_distance(b, a));
    const double h = distance(a.center, b.center);
    EXPECT_NEAR(gap_distance(a, b) + a.radius + b.radius, h, 1e-12 * (1 + h));
  }
}

TEST(EdgeWeight, Examples) {
  auto touching = disks_at({{0, 0}, {1, 0}}, {1, 1});
  EXPECT_EQ(edge_weight(touching[0], touching[1], Variant::DisksWeightedGaps), 0.0);
  auto apart = disks_at({{0, 0}, {5, 0}}, {1, 1});
  EXPECT_DOUBLE_EQ(edge_weight(apart[0], apart[1], Variant::DisksWeightedGaps), 3.0);
  EXPECT_DOUBLE_EQ(edge_weight(apart[0], apart[1], Variant::DisksWeightedCenters), 5.0);
  EXPECT_DOUBLE_EQ(edge_weight(apart[0], apart[1], Variant::UnitWeighted), 5.0);
  EXPECT_THROW(edge_weight(apart[0], apart[1], Variant::UnitUnweighted), InvalidParameter);
}

TEST(CriticalValue, Examples) {
  auto d = disks_at({{0, 0}, {5, 0}}, {1, 1});
  const CriticalValue add = critical_value(d[1], d[0], Variant::AdditiveScale);
  EXPECT_DOUBLE_EQ(add.value, 1.5);
  EXPECT_EQ(add.first, 0);
  EXPECT_EQ(add.second, 1);

  auto m = disks_at({{0, 0}, {6, 0}}, {1, 2});
  EXPECT_DOUBLE_EQ(critical_value(m[0], m[1], Variant::MultiplicativeScale).value, 2.0);

  auto u = disks_at({{0, 0}, {3, 4}});
  EXPECT_DOUBLE_EQ(critical_value(u[0], u[1], Variant::UnitUnweighted).value, 5.0);
  EXPECT_DOUBLE_EQ(critical_value(u[0], u[1], Variant::UnitWeighted).value, 5.0);
  EXPECT_DOUBLE_EQ(critical_value(d[0], d[1], Variant::DisksUnweighted).value, 3.0);
}

TEST(CriticalValue, Errors) {
  auto d = disks_at({{0, 0}, {5, 0}});
  EXPECT_THROW(critical_value(d[0], d[0], Variant::UnitUnweighted), InvalidParameter);
  EXPECT_THROW(critical_value(d[0], d[1], Variant::MultiplicativeScale), DegenerateCritical);
}

TEST(CriticalValue, OrderedByValueThenWitness) {
  CriticalValue a{1.0, 0, 3}, b{1.0, 1, 2}, c{2.0, 0, 1};
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(a, (CriticalValue{1.0, 0, 3}));
}

TEST(IsEdge, ClosedAtTheCriticalValue) {
  auto u = disks_at({{0, 0}, {3, 4}});
  EXPECT_TRUE(is_edge(u[0], u[1], Variant::UnitUnweighted, 5.0));
  EXPECT_FALSE(is_edge(u[0], u[1], Variant::UnitUnweighted, next_down(5.0)));
  // Zero radius sum: adjacent at every scale only when the centers coincide.
  auto same = disks_at({{1, 1}, {1, 1}, {2, 1}});
  EXPECT_TRUE(is_edge(same[0], same[1], Variant::MultiplicativeScale, 1e-9));
  EXPECT_FALSE(is_edge(same[0], same[2], Variant::MultiplicativeScale, 1e9));
}

TEST(ScaledInstance, Examples) {
  auto d = disks_at({{0, 0}, {4, 0}}, {1, 1});
  auto add = scaled_instance(d, Variant::AdditiveScale, 0.5);
  EXPECT_DOUBLE_EQ(add[0].radius, 1.5);
  auto mul = scaled_instance(d, Variant::MultiplicativeScale, 2.0);
  EXPECT_DOUBLE_EQ(mul[0].radius, 2.0);

  // Gap 2 shrinks by 2*alpha: alpha = 1 closes it.
  EXPECT_FALSE(is_edge(d[0], d[1], Variant::DisksUnweighted, 0.0));
  auto grown = scaled_instance(d, Variant::AdditiveScale, 1.0);
  EXPECT_DOUBLE_EQ(gap_distance(grown[0], grown[1]), 0.0);
  EXPECT_TRUE(is_edge(grown[0], grown[1], Variant::DisksUnweighted, 0.0));
  EXPECT_TRUE(is_edge(d[0], d[1], Variant::AdditiveScale, 1.0));

  EXPECT_THROW(scaled_instance(d, Variant::DisksUnweighted, 1.0), InvalidParameter);
  EXPECT_THROW(scaled_instance(d, Variant::AdditiveScale, 0.0), InvalidParameter);
}

TEST(ScaledInstance, ScalingCriticalMatchesIntersection) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(0, 20), r(0.1, 3);
  for (int i = 0; i < 500; ++i) {
    auto d = disks_at({{c(rng), c(rng)}, {c(rng), c(rng)}}, {r(rng), r(rng)});
    for (Variant v : {Variant::AdditiveScale, Variant::MultiplicativeScale}) {
      const double p = critical_value(d[0], d[1], v).value;
      if (p <= 0.0) continue;
      auto above = scaled_instance(d, v, p * (1 + 1e-9));
      auto below = scaled_instance(d, v, p * (1 - 1e-9));
      EXPECT_LE(gap_distance(above[0], above[1]), 1e-9);
      EXPECT_GT(gap_distance(below[0], below[1]), -1e-9);
    }
  }
}

TEST(ValidateInstance, RejectsBadInput) {
  auto ok = disks_at({{0, 0}, {1, 0}});
  EXPECT_NO_THROW(validate_instance(ok, Variant::UnitUnweighted));
  auto gap = ok;
  gap[1].id = 2;
  EXPECT_THROW(validate_instance(gap, Variant::DisksUnweighted), InputError);
  auto nan = ok;
  nan[0].center.x = std::nan("");
  EXPECT_THROW(validate_instance(nan, Variant::DisksUnweighted), InputError);
  auto neg = ok;
  neg[0].radius = -1;
  EXPECT_THROW(validate_instance(neg, Variant::DisksUnweighted), InputError);
  auto mixed = disks_at({{0, 0}, {1, 0}}, {1, 2});
  EXPECT_THROW(validate_instance(mixed, Variant::UnitWeighted), InputError);
  EXPECT_NO_THROW(validate_instance(mixed, Variant::DisksWeightedGaps));
}

TEST(Variant, NamesRoundTrip) {
  for (Variant v : kAllVariants) EXPECT_EQ(parse_variant(variant_name(v)), v);
  EXPECT_FALSE(parse_variant("bogus"));
  EXPECT_EQ(parameter_name(Variant::AdditiveScale), "alpha_star");
  EXPECT_EQ(parameter_name(Variant::MultiplicativeScale), "lambda_star");
  EXPECT_EQ(parameter_name(Variant::DisksWeightedGaps), "r_star");
}

}  // namespace
}  // namespace diskpath
