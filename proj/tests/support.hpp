#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "diskpath/diskpath.hpp"

namespace diskpath::testing {

inline std::vector<Disk> disks_at(std::initializer_list<Point2> centers,
                                  std::initializer_list<double> radii = {}) {
  std::vector<Disk> out;
  auto r = radii.begin();
  int id = 0;
  for (const Point2& c : centers) {
    out.push_back(Disk{id++, c, r != radii.end() ? *r++ : 0.0});
  }
  return out;
}

/// Points (0,0), (1,0), (3,0), (6,0).
inline std::vector<Disk> line4() { return disks_at({{0, 0}, {1, 0}, {3, 0}, {6, 0}}); }

/// Disks on the x-axis, centers 0, 5, 12 with radii 1, 1, 2.
inline std::vector<Disk> line3_disks() { return disks_at({{0, 0}, {5, 0}, {12, 0}}, {1, 1, 2}); }

struct RandomCase {
  std::vector<Disk> disks;
  int s = 0;
  int t = 0;
  Budget budget;
};

/// Uniform centers in a square of side 2*sqrt(n), radii in [0,2] (zero for
/// unit variants). The target is drawn among disks within a third of the side
/// from the source; weight budgets are 1 to 1.5 times the direct distance.
inline RandomCase random_case(int n, Variant v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double side = 2.0 * std::sqrt(static_cast<double>(n));
  std::uniform_real_distribution<double> coord(0.0, side);
  std::uniform_real_distribution<double> rad(0.0, 2.0);
  RandomCase c;
  for (int i = 0; i < n; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    const double r = rad(rng);
    c.disks.push_back(Disk{i, {x, y}, is_unit(v) ? 0.0 : r});
  }
  std::vector<int> near;
  for (int i = 1; i < n; ++i) {
    if (distance(c.disks[0].center, c.disks[i].center) <= side / 3) near.push_back(i);
  }
  c.t = near.empty() ? 1 + static_cast<int>(rng() % (n - 1)) : near[rng() % near.size()];
  std::uniform_real_distribution<double> factor(1.0, 1.5);
  const double f = factor(rng);
  if (v == Variant::DisksWeightedGaps) {
    c.budget = Budget::weight(std::max(0.0, gap_distance(c.disks[0], c.disks[c.t])) * f);
  } else if (is_weighted(v)) {
    c.budget = Budget::weight(distance(c.disks[0].center, c.disks[c.t].center) * f);
  } else {
    c.budget = Budget::hops(1 + static_cast<std::int64_t>(rng() % 6));
  }
  return c;
}

}  // namespace diskpath::testing
