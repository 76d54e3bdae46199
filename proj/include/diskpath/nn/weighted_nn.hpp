#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "diskpath/geometry.hpp"

namespace diskpath {

struct WeightedSite {
  int id = 0;
  Point2 point;
  double weight = 0.0;
};

/// Query point plus the query disk's own radius (ignored by some kernels).
struct NNQuery {
  Point2 point;
  double radius = 0.0;
};

struct NNResult {
  int id = -1;
  double value = 0.0;
};

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void extend(const Point2& p) noexcept {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  double distance_to(const Point2& q) const noexcept {
    const double dx = std::max({0.0, xmin - q.x, q.x - xmax});
    const double dy = std::max({0.0, ymin - q.y, q.y - ymax});
    return std::sqrt(dx * dx + dy * dy);
  }
};

// Kernels define the distance being minimized and a lower bound over a box of
// sites whose weights lie in [wmin, wmax].

/// weight + |q - p|
struct AdditiveKernel {
  static double value(const NNQuery& q, const Point2& p, double w) noexcept {
    return w + distance(q.point, p);
  }
  static double bound(const NNQuery& q, const Box& b, double wmin, double) noexcept {
    return wmin + b.distance_to(q.point);
  }
};

/// Gap between the query disk and a site disk of radius w: |q - p| - (q.r + w).
struct GapKernel {
  static double value(const NNQuery& q, const Point2& p, double w) noexcept {
    return distance(q.point, p) - (q.radius + w);
  }
  static double bound(const NNQuery& q, const Box& b, double, double wmax) noexcept {
    return b.distance_to(q.point) - (q.radius + wmax);
  }
};

/// Scale factor at which the query disk and a site disk of radius w touch:
/// |q - p| / (q.r + w). A zero radius sum gives 0 for coincident centers and
/// infinity otherwise.
struct RatioKernel {
  static double ratio(double h, double sum) noexcept {
    if (sum == 0.0) return h == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return h / sum;
  }
  static double value(const NNQuery& q, const Point2& p, double w) noexcept {
    return ratio(distance(q.point, p), q.radius + w);
  }
  static double bound(const NNQuery& q, const Box& b, double, double wmax) noexcept {
    return ratio(b.distance_to(q.point), q.radius + wmax);
  }
};

inline bool better(double value, int id, const NNResult& best) noexcept {
  return best.id < 0 || value < best.value || (value == best.value && id < best.id);
}

/// Static kd-tree over weighted sites with exact kernel nearest-neighbor
/// queries. Sites can be switched off and on; counts are kept per node so
/// empty subtrees are skipped.
template <class Kernel>
class WeightedNN {
 public:
  static constexpr std::size_t kLeafSize = 8;

  WeightedNN() = default;

  explicit WeightedNN(std::vector<WeightedSite> sites) : sites_(std::move(sites)) {
    const std::size_t n = sites_.size();
    live_.assign(n, 1);
    leaf_of_.assign(n, 0);
    if (n == 0) return;
    nodes_.reserve(2 * (n / kLeafSize + 1));
    build(0, static_cast<std::uint32_t>(n), -1);
  }

  std::size_t size() const noexcept { return sites_.size(); }
  std::size_t live_count() const noexcept { return nodes_.empty() ? 0 : nodes_[0].live; }
  const WeightedSite& site(std::size_t slot) const noexcept { return sites_[slot]; }
  bool is_live(std::size_t slot) const noexcept { return live_[slot] != 0; }

  /// Slot positions are a permutation of the input order fixed at build time.
  void set_live(std::size_t slot, bool on) noexcept {
    if ((live_[slot] != 0) == on) return;
    live_[slot] = on ? 1 : 0;
    for (int v = leaf_of_[slot]; v >= 0; v = nodes_[v].parent) {
      nodes_[v].live += on ? 1 : -1;
    }
  }

  std::optional<NNResult> query(const NNQuery& q) const {
    if (live_count() == 0) return std::nullopt;
    NNResult best;
    visit(0, q, best);
    return best;
  }

  NNResult nearest(const NNQuery& q) const {
    auto r = query(q);
    if (!r) throw EmptyStructure("nearest-neighbor query on an empty structure");
    return *r;
  }

 private:
  struct Node {
    Box box;
    double wmin = 0.0;
    double wmax = 0.0;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t parent = -1;
    std::uint32_t live = 0;
  };

  int build(std::uint32_t begin, std::uint32_t end, int parent) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.begin = begin;
    node.end = end;
    node.parent = parent;
    node.live = end - begin;
    node.wmin = std::numeric_limits<double>::infinity();
    node.wmax = -std::numeric_limits<double>::infinity();
    for (std::uint32_t i = begin; i < end; ++i) {
      node.box.extend(sites_[i].point);
      node.wmin = std::min(node.wmin, sites_[i].weight);
      node.wmax = std::max(node.wmax, sites_[i].weight);
    }
    if (end - begin > kLeafSize) {
      // Split on x, y or the weight, whichever spreads most: weight-coherent
      // nodes keep the additive bounds tight.
      const double ex = node.box.xmax - node.box.xmin;
      const double ey = node.box.ymax - node.box.ymin;
      const double ew = node.wmax - node.wmin;
      const int axis = ew > ex && ew > ey ? 2 : (ex >= ey ? 0 : 1);
      const std::uint32_t mid = begin + (end - begin) / 2;
      auto coord = [axis](const WeightedSite& s) {
        return axis == 0 ? s.point.x : axis == 1 ? s.point.y : s.weight;
      };
      auto less = [&coord](const WeightedSite& a, const WeightedSite& b) {
        const double ka = coord(a);
        const double kb = coord(b);
        return ka < kb || (ka == kb && a.id < b.id);
      };
      std::nth_element(sites_.begin() + begin, sites_.begin() + mid, sites_.begin() + end, less);
      node.left = build(begin, mid, idx);
      node.right = build(mid, end, idx);
    } else {
      for (std::uint32_t i = begin; i < end; ++i) leaf_of_[i] = idx;
    }
    nodes_[idx] = node;
    return idx;
  }

  double lower_bound(const Node& n, const NNQuery& q) const noexcept {
    return Kernel::bound(q, n.box, n.wmin, n.wmax);
  }

  static bool prunable(double bound, const NNResult& best) noexcept {
    if (best.id < 0) return false;
    return bound > best.value + 1e-9 * (1.0 + std::fabs(best.value));
  }

  void visit(int idx, const NNQuery& q, NNResult& best) const {
    const Node& n = nodes_[idx];
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        if (!live_[i]) continue;
        const double v = Kernel::value(q, sites_[i].point, sites_[i].weight);
        if (better(v, sites_[i].id, best)) best = NNResult{sites_[i].id, v};
      }
      return;
    }
    const Node& l = nodes_[n.left];
    const Node& r = nodes_[n.right];
    const double bl = l.live ? lower_bound(l, q) : std::numeric_limits<double>::infinity();
    const double br = r.live ? lower_bound(r, q) : std::numeric_limits<double>::infinity();
    const int first = bl <= br ? n.left : n.right;
    const int second = bl <= br ? n.right : n.left;
    const double b1 = std::min(bl, br);
    const double b2 = std::max(bl, br);
    if (nodes_[first].live && !prunable(b1, best)) visit(first, q, best);
    if (nodes_[second].live && !prunable(b2, best)) visit(second, q, best);
  }

  std::vector<WeightedSite> sites_;
  std::vector<char> live_;
  std::vector<int> leaf_of_;
  std::vector<Node> nodes_;
};

}  // namespace diskpath
