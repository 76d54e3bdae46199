#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "diskpath/nn/delete_only_nn.hpp"
#include "diskpath/undo_log.hpp"

namespace diskpath {

struct FilteredSite {
  int id = 0;
  Point2 point;
  double key = 0.0;               // sort key
  double filter_weight = 0.0;     // weight seen by the filter kernel
  double objective_weight = 0.0;  // weight seen by the objective kernel
};

struct FilteredQueryTrace {
  int w0 = -1;  // sorted position of the leftmost leaf holding a passing site
};

/// Balanced tree over sites sorted by key. Every node keeps a filter-distance
/// and an objective-distance nearest-neighbor structure for its subtree, which
/// answers "objective-nearest site among those passing the filter" whenever
/// objective - filter is non-decreasing in the key.
///
/// Small nodes skip the kd-trees and scan their range directly; the answers
/// are the same.
template <class FilterKernel, class ObjectiveKernel>
class FilteredNNTree {
 public:
  static constexpr std::size_t kScanBelow = 96;

  FilteredNNTree() = default;

  explicit FilteredNNTree(std::vector<FilteredSite> sites, UndoLog* log = nullptr)
      : sites_(std::move(sites)), log_(log) {
    std::sort(sites_.begin(), sites_.end(), [](const FilteredSite& a, const FilteredSite& b) {
      return a.key < b.key || (a.key == b.key && a.id < b.id);
    });
    live_.assign(sites_.size(), 1);
    pos_by_id_.reserve(sites_.size());
    for (std::size_t i = 0; i < sites_.size(); ++i) {
      pos_by_id_.emplace_back(sites_[i].id, static_cast<std::uint32_t>(i));
    }
    std::sort(pos_by_id_.begin(), pos_by_id_.end());
    if (!sites_.empty()) {
      nodes_.reserve(2 * sites_.size());
      build(0, static_cast<std::uint32_t>(sites_.size()));
    }
  }

  FilteredNNTree(const FilteredNNTree&) = delete;
  FilteredNNTree& operator=(const FilteredNNTree&) = delete;

  std::size_t size() const noexcept { return sites_.size(); }
  std::size_t live_count() const noexcept { return nodes_.empty() ? 0 : nodes_[0].live; }
  const FilteredSite& sorted_site(std::size_t pos) const noexcept { return sites_[pos]; }
  bool live_at(std::size_t pos) const noexcept { return live_[pos] != 0; }

  bool contains(int id) const noexcept {
    auto pos = position_of(id);
    return pos && live_[*pos];
  }

  void erase(int id) {
    auto pos = position_of(id);
    if (!pos || !live_[*pos]) throw AlreadyDeleted("site " + std::to_string(id) + " is not live");
    journal::assign(log_, live_[*pos], char{0});
    int v = 0;
    while (true) {
      Node& n = nodes_[v];
      journal::assign(log_, n.live, n.live - 1);
      if (n.kd >= 0) {
        filter_[n.kd]->erase(id);
        objective_[n.kd]->erase(id);
      }
      if (n.left < 0) break;
      v = *pos < nodes_[n.left].end ? n.left : n.right;
    }
  }

  /// Objective-nearest live site among those for which passes(site) holds.
  /// passes must be the filter predicate "filter distance <= r"; it is only
  /// ever called on sites returned by a filter or objective structure.
  template <class Pass>
  std::optional<NNResult> query(const NNQuery& q, Pass&& passes, CostMeter* meter = nullptr,
                                FilteredQueryTrace* trace = nullptr) const {
    if (trace) trace->w0 = -1;
    if (live_count() == 0) return std::nullopt;
    auto charge = [meter] {
      if (meter) meter->add();
    };

    // Shortcut: the unconstrained objective minimum, if it passes, is the answer.
    charge();
    auto g = objective_nn(nodes_[0], q);
    if (passes(g->id)) return g;

    charge();
    auto f = filter_nn(nodes_[0], q);
    if (!passes(f->id)) return std::nullopt;

    int v = 0;
    int canonical[64];
    int ncanon = 0;
    while (nodes_[v].left >= 0) {
      const Node& n = nodes_[v];
      bool go_left = false;
      if (nodes_[n.left].live) {
        charge();
        go_left = passes(filter_nn(nodes_[n.left], q)->id);
      }
      if (go_left) {
        if (nodes_[n.right].live) canonical[ncanon++] = n.right;
        v = n.left;
      } else {
        v = n.right;
      }
    }
    if (trace) trace->w0 = static_cast<int>(nodes_[v].begin);

    std::optional<NNResult> best;
    auto consider = [&](int node) {
      charge();
      auto res = objective_nn(nodes_[node], q);
      if (!res || !passes(res->id)) return;
      if (!best || better(res->value, res->id, *best)) best = res;
    };
    consider(v);
    for (int i = ncanon - 1; i >= 0; --i) consider(canonical[i]);
    return best;
  }

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t live = 0;
    std::int32_t kd = -1;
  };

  std::optional<std::size_t> position_of(int id) const noexcept {
    auto it = std::lower_bound(pos_by_id_.begin(), pos_by_id_.end(),
                               std::pair<int, std::uint32_t>{id, 0});
    if (it == pos_by_id_.end() || it->first != id) return std::nullopt;
    return it->second;
  }

  int build(std::uint32_t begin, std::uint32_t end) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Node n;
    n.begin = begin;
    n.end = end;
    n.live = end - begin;
    if (end - begin > kScanBelow) {
      std::vector<WeightedSite> fs, os;
      fs.reserve(end - begin);
      os.reserve(end - begin);
      for (std::uint32_t i = begin; i < end; ++i) {
        fs.push_back(WeightedSite{sites_[i].id, sites_[i].point, sites_[i].filter_weight});
        os.push_back(WeightedSite{sites_[i].id, sites_[i].point, sites_[i].objective_weight});
      }
      n.kd = static_cast<int>(filter_.size());
      filter_.push_back(std::make_unique<DeleteOnlyNN<FilterKernel>>(std::move(fs), log_));
      objective_.push_back(std::make_unique<DeleteOnlyNN<ObjectiveKernel>>(std::move(os), log_));
    }
    if (end - begin > 1) {
      const std::uint32_t mid = begin + (end - begin) / 2;
      n.left = build(begin, mid);
      n.right = build(mid, end);
    }
    nodes_[idx] = n;
    return idx;
  }

  template <class Kernel, bool kObjective>
  std::optional<NNResult> scan(const Node& n, const NNQuery& q) const {
    NNResult best;
    for (std::uint32_t i = n.begin; i < n.end; ++i) {
      if (!live_[i]) continue;
      const FilteredSite& s = sites_[i];
      const double v =
          Kernel::value(q, s.point, kObjective ? s.objective_weight : s.filter_weight);
      if (better(v, s.id, best)) best = NNResult{s.id, v};
    }
    if (best.id < 0) return std::nullopt;
    return best;
  }

  std::optional<NNResult> filter_nn(const Node& n, const NNQuery& q) const {
    if (n.kd >= 0) return filter_[n.kd]->query(q);
    return scan<FilterKernel, false>(n, q);
  }

  std::optional<NNResult> objective_nn(const Node& n, const NNQuery& q) const {
    if (n.kd >= 0) return objective_[n.kd]->query(q);
    return scan<ObjectiveKernel, true>(n, q);
  }

  std::vector<FilteredSite> sites_;
  std::vector<char> live_;
  std::vector<std::pair<int, std::uint32_t>> pos_by_id_;
  std::vector<Node> nodes_;
  std::vector<std::unique_ptr<DeleteOnlyNN<FilterKernel>>> filter_;
  std::vector<std::unique_ptr<DeleteOnlyNN<ObjectiveKernel>>> objective_;
  UndoLog* log_ = nullptr;
};

// The three instantiations used by the deciders.

/// Unreached disks: key radius, filter gap, objective center distance.
using UnreachedTree = FilteredNNTree<GapKernel, AdditiveKernel>;
/// Reached disks: key label + radius, filter gap, objective label + center distance.
using ReachedTree = FilteredNNTree<GapKernel, AdditiveKernel>;
/// Cell points in the grid Dijkstra: key label, filter Euclidean, objective label + Euclidean.
using LabelTree = FilteredNNTree<AdditiveKernel, AdditiveKernel>;

inline FilteredSite unreached_site(const Disk& d) {
  return FilteredSite{d.id, d.center, d.radius, d.radius, 0.0};
}
inline FilteredSite reached_site(const Disk& d, double label) {
  return FilteredSite{d.id, d.center, label + d.radius, d.radius, label};
}
inline FilteredSite label_site(int id, const Point2& p, double label) {
  return FilteredSite{id, p, label, 0.0, label};
}

}  // namespace diskpath
