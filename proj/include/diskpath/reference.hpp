#pragma once

// Brute-force reference algorithms. Quadratic and simple on purpose: they are
// the yardstick the fast deciders and the optimizer are tested against.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "diskpath/geometry.hpp"

namespace diskpath {

/// Path budget: a hop bound for unweighted variants, a weight bound otherwise.
struct Budget {
  enum class Kind { Hops, Weight };
  Kind kind = Kind::Hops;
  std::int64_t k = 0;
  double w = 0.0;

  static Budget hops(std::int64_t k) { return Budget{Kind::Hops, k, 0.0}; }
  static Budget weight(double w) { return Budget{Kind::Weight, 0, w}; }
};

inline void validate_budget(Variant variant, const Budget& budget) {
  if (is_weighted(variant)) {
    if (budget.kind != Budget::Kind::Weight) {
      throw InvalidParameter("variant " + std::string(variant_name(variant)) +
                             " needs a weight budget");
    }
    if (!(budget.w >= 0.0) || !std::isfinite(budget.w)) {
      throw InvalidParameter("weight budget must be finite and non-negative");
    }
  } else {
    if (budget.kind != Budget::Kind::Hops) {
      throw InvalidParameter("variant " + std::string(variant_name(variant)) +
                             " needs a hop budget");
    }
    if (budget.k < 0) throw InvalidParameter("hop budget must be non-negative");
  }
}

inline void validate_endpoints(std::size_t n, int s, int t) {
  if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= n || static_cast<std::size_t>(t) >= n) {
    throw InvalidVertex("source/target out of range");
  }
}

/// Answer of a reverse-shortest-path query.
struct RspAnswer {
  bool feasible = false;
  double value = 0.0;
  std::optional<CriticalValue> critical;  // empty when s == t
};

struct ExplicitGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<int, double>>> adjacency;
};

inline ExplicitGraph build_graph(std::span<const Disk> disks, Variant variant, double r) {
  ExplicitGraph g;
  g.n = disks.size();
  g.adjacency.resize(g.n);
  const bool weighted = is_weighted(variant);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      if (!is_edge(disks[i], disks[j], variant, r)) continue;
      const double w = weighted ? edge_weight(disks[i], disks[j], variant) : 1.0;
      g.adjacency[i].emplace_back(static_cast<int>(j), w);
      g.adjacency[j].emplace_back(static_cast<int>(i), w);
    }
  }
  return g;
}

/// Hop distances from s; -1 marks unreachable vertices.
inline std::vector<int> bfs_levels(const ExplicitGraph& g, int s) {
  std::vector<int> level(g.n, -1);
  std::vector<int> queue{s};
  level[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (auto [v, w] : g.adjacency[u]) {
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

inline std::optional<int> bfs_hops(const ExplicitGraph& g, int s, int t) {
  validate_endpoints(g.n, s, t);
  const int h = bfs_levels(g, s)[t];
  if (h < 0) return std::nullopt;
  return h;
}

/// Shortest-path distances from s; infinity marks unreachable vertices.
inline std::vector<double> dijkstra_all(const ExplicitGraph& g, int s) {
  std::vector<double> dist(g.n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : g.adjacency[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

inline std::optional<double> dijkstra_weight(const ExplicitGraph& g, int s, int t) {
  validate_endpoints(g.n, s, t);
  const double d = dijkstra_all(g, s)[t];
  if (d == std::numeric_limits<double>::infinity()) return std::nullopt;
  return d;
}

struct CriticalList {
  std::vector<CriticalValue> values;  // sorted
  std::size_t degenerate = 0;         // multiplicative pairs with zero radius sum
};

inline CriticalList enumerate_criticals(std::span<const Disk> disks, Variant variant) {
  CriticalList out;
  const std::size_t n = disks.size();
  out.values.reserve(n * (n - (n > 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto v = pair_critical(disks[i], disks[j], variant);
      if (!v) {
        ++out.degenerate;
        continue;
      }
      out.values.push_back(CriticalValue{*v, std::min(disks[i].id, disks[j].id),
                                         std::max(disks[i].id, disks[j].id), variant});
    }
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

inline bool decide_on_graph(const ExplicitGraph& g, Variant variant, int s, int t,
                            const Budget& budget) {
  if (is_weighted(variant)) {
    auto d = dijkstra_weight(g, s, t);
    return d && *d <= budget.w;
  }
  auto h = bfs_hops(g, s, t);
  return h && *h <= budget.k;
}

inline bool decide_naive(std::span<const Disk> disks, Variant variant, int s, int t,
                         const Budget& budget, double r) {
  validate_endpoints(disks.size(), s, t);
  validate_budget(variant, budget);
  return decide_on_graph(build_graph(disks, variant, r), variant, s, t, budget);
}

/// Smallest critical value at which the budgeted s-t path exists, found by
/// binary search over the indices of the sorted critical list.
inline RspAnswer solve_naive(std::span<const Disk> disks, Variant variant, int s, int t,
                             const Budget& budget) {
  validate_endpoints(disks.size(), s, t);
  validate_budget(variant, budget);
  if (s == t) return RspAnswer{true, 0.0, std::nullopt};
  const auto list = enumerate_criticals(disks, variant).values;
  if (list.empty()) return RspAnswer{};
  auto feasible = [&](std::size_t i) {
    return decide_naive(disks, variant, s, t, budget, list[i].value);
  };
  if (!feasible(list.size() - 1)) return RspAnswer{};
  std::size_t lo = 0;
  std::size_t hi = list.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  // Equal values decide identically, so lo is the first of its value group.
  return RspAnswer{true, list[lo].value, list[lo]};
}

}  // namespace diskpath
