#pragma once

// Deciders for disks of arbitrary radii: BFS on proximity/intersection
// graphs and Dijkstra under gap weights or center-distance weights.

#include <algorithm>
#include <limits>
#include <memory>
#include <set>
#include <vector>

#include "diskpath/decider.hpp"
#include "diskpath/nn/delete_only_nn.hpp"
#include "diskpath/nn/filtered_nn_tree.hpp"

namespace diskpath {

namespace detail {

inline NNQuery disk_query(const Disk& d) { return NNQuery{d.center, d.radius}; }

inline std::vector<WeightedSite> radius_sites(const std::vector<Disk>& disks, int skip) {
  std::vector<WeightedSite> sites;
  sites.reserve(disks.size());
  for (const Disk& d : disks) {
    if (d.id != skip) sites.push_back(WeightedSite{d.id, d.center, d.radius});
  }
  return sites;
}

struct PairEntry {
  double key = 0.0;
  int from = 0;
  int to = 0;
  friend auto operator<=>(const PairEntry&, const PairEntry&) = default;
};

}  // namespace detail

/// Level-order BFS that repeatedly pulls the nearest unreached disk of each
/// frontier disk. The kernel orders unreached disks by the variant's
/// critical value: gap (or half-gap) via GapKernel, scale ratio via RatioKernel.
template <class Kernel>
class DiskBfsDecider final : public Decider {
 public:
  DiskBfsDecider(std::span<const Disk> disks, Variant variant, int s, int t, std::int64_t k)
      : disks_(effective_disks(disks, variant)), variant_(variant), s_(s), t_(t), k_(k) {
    validate_endpoints(disks_.size(), s, t);
    if (is_weighted(variant)) throw InvalidParameter("BFS decider needs an unweighted variant");
    if (k < 0) throw InvalidParameter("hop budget must be non-negative");
    level_.assign(disks_.size(), -1);
    prev_.assign(disks_.size(), -1);
    level_[s] = 0;
    unreached_ = std::make_unique<DeleteOnlyNN<Kernel>>(detail::radius_sites(disks_, s), &log_);
    frontier_.push_back(s);
    if (s == t) {
      status_ = kYes;
    } else if (k == 0) {
      status_ = kNo;
    }
  }

  std::string_view name() const override { return "disk-bfs"; }
  bool finished() const override { return status_ != kRunning; }
  bool feasible() const override { return status_ == kYes; }
  const std::vector<int>& levels() const noexcept { return level_; }

  PathResult path() const override {
    if (status_ != kYes) return {};
    return trace_path(prev_, s_, t_);
  }

  std::uint64_t fingerprint() const override {
    Fingerprint f;
    f.add(status_);
    f.add(level_i_);
    f.add(cursor_);
    f.add_all(level_);
    f.add_all(prev_);
    f.add_all(frontier_);
    f.add_all(next_);
    f.add(static_cast<std::uint64_t>(unreached_->live_count()));
    return f.value();
  }

 protected:
  void step(ThresholdOracle& oracle) override {
    UndoLog* log = &log_;
    const Disk& d = disks_[frontier_[cursor_]];
    std::optional<NNResult> nn;
    if (!unreached_->empty()) {
      cost_.add();
      nn = unreached_->query(detail::disk_query(d));
    }
    if (nn && adjacent(oracle, d, disks_[nn->id], nn->value)) {
      const int p = nn->id;
      journal::assign(log, level_[p], level_i_ + 1);
      journal::assign(log, prev_[p], d.id);
      journal::push_back(log, next_, p);
      cost_.add();
      unreached_->erase(p);
      if (p == t_) journal::assign(log, status_, static_cast<int>(kYes));
      return;
    }
    journal::assign(log, cursor_, cursor_ + 1);
    if (cursor_ < static_cast<int>(frontier_.size())) return;
    if (next_.empty() || level_i_ + 1 >= k_) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    journal::replace(log, frontier_, next_);
    journal::replace(log, next_, {});
    journal::assign(log, level_i_, level_i_ + 1);
    journal::assign(log, cursor_, 0);
  }

 private:
  bool adjacent(ThresholdOracle& oracle, const Disk& a, const Disk& b, double kernel_value) {
    if (variant_ == Variant::MultiplicativeScale && a.radius + b.radius == 0.0) {
      // No critical value: the pair is adjacent at every scale iff coincident.
      return kernel_value == 0.0;
    }
    return test_edge(oracle, critical_value(a, b, variant_));
  }

  std::vector<Disk> disks_;
  Variant variant_;
  int s_;
  int t_;
  std::int64_t k_;
  std::vector<int> level_;
  std::vector<int> prev_;
  std::vector<int> frontier_;
  std::vector<int> next_;
  std::unique_ptr<DeleteOnlyNN<Kernel>> unreached_;
  int cursor_ = 0;
  int level_i_ = 0;
  int status_ = kRunning;
};

/// Dijkstra under gap weights max(0, gap). Each reached disk caches its
/// gap-nearest unreached disk; a disk whose nearest one is out of range can
/// never reach anything again and is retired to the dead set.
class GapDijkstraDecider final : public Decider {
 public:
  enum Membership : char { kUnreached = 0, kReached = 1, kDead = 2 };

  GapDijkstraDecider(std::span<const Disk> disks, Variant variant, int s, int t, double w)
      : disks_(effective_disks(disks, variant)), variant_(variant), s_(s), t_(t), w_(w) {
    validate_endpoints(disks_.size(), s, t);
    if (variant != Variant::DisksWeightedGaps && variant != Variant::UnitWeighted) {
      throw InvalidParameter("gap Dijkstra needs gap weights");
    }
    if (!(w >= 0.0)) throw InvalidParameter("weight budget must be non-negative");
    const std::size_t n = disks_.size();
    delta_.assign(n, std::numeric_limits<double>::infinity());
    prev_.assign(n, -1);
    member_.assign(n, kUnreached);
    delta_[s] = 0.0;
    member_[s] = kReached;
    unreached_ = std::make_unique<DeleteOnlyNN<GapKernel>>(detail::radius_sites(disks_, s), &log_);
    if (s == t) {
      status_ = kYes;
    } else {
      push_entry(s);
    }
  }

  std::string_view name() const override { return "gap-dijkstra"; }
  bool finished() const override { return status_ != kRunning; }
  bool feasible() const override { return status_ == kYes; }
  const std::vector<double>& labels() const noexcept { return delta_; }
  const std::vector<char>& membership() const noexcept { return member_; }
  /// Disks in the order they were settled (source first).
  const std::vector<int>& settle_order() const noexcept { return order_; }

  PathResult path() const override {
    if (status_ != kYes) return {};
    PathResult out = trace_path(prev_, s_, t_);
    out.weight = delta_[t_];
    return out;
  }

  std::uint64_t fingerprint() const override {
    Fingerprint f;
    f.add(status_);
    f.add_all(delta_);
    f.add_all(prev_);
    f.add_all(member_);
    f.add(static_cast<std::uint64_t>(entries_.size()));
    for (const auto& e : entries_) {
      f.add(e.key);
      f.add(e.from);
      f.add(e.to);
    }
    return f.value();
  }

 protected:
  void step(ThresholdOracle& oracle) override {
    UndoLog* log = &log_;
    if (entries_.empty()) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    const detail::PairEntry e = *entries_.begin();
    if (e.key > w_) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    journal::erase(log, entries_, e);
    if (!unreached_->contains(e.to)) {
      // Cached neighbor was taken meanwhile; the cached key was a lower bound.
      push_entry(e.from);
      return;
    }
    const Disk& d = disks_[e.from];
    const Disk& u = disks_[e.to];
    if (!test_edge(oracle, critical_value(d, u, variant_))) {
      journal::assign(log, member_[e.from], static_cast<char>(kDead));
      return;
    }
    journal::assign(log, delta_[e.to], e.key);
    journal::assign(log, prev_[e.to], e.from);
    journal::assign(log, member_[e.to], static_cast<char>(kReached));
    journal::push_back(log, order_, e.to);
    cost_.add();
    unreached_->erase(e.to);
    if (e.to == t_) {
      journal::assign(log, status_, static_cast<int>(e.key <= w_ ? kYes : kNo));
      return;
    }
    push_entry(e.to);
    push_entry(e.from);
  }

 private:
  void push_entry(int from) {
    if (unreached_->empty()) return;
    cost_.add();
    const NNResult nn = unreached_->nearest(detail::disk_query(disks_[from]));
    const double key = delta_[from] + std::max(0.0, nn.value);
    journal::insert(&log_, entries_, detail::PairEntry{key, from, nn.id});
  }

  std::vector<Disk> disks_;
  Variant variant_;
  int s_;
  int t_;
  double w_;
  std::vector<double> delta_;
  std::vector<int> prev_;
  std::vector<char> member_;
  std::vector<int> order_{};
  std::set<detail::PairEntry> entries_;
  std::unique_ptr<DeleteOnlyNN<GapKernel>> unreached_;
  int status_ = kRunning;
};

/// Dijkstra under center-distance weights. The constrained closest pair
/// between reached and unreached disks comes from two filtered trees: one
/// over unreached disks queried from reached ones (cached lazily per reached
/// disk), one over reached disks resolving the label of the disk being settled.
class CenterDijkstraDecider final : public Decider {
 public:
  CenterDijkstraDecider(std::span<const Disk> disks, Variant variant, int s, int t, double w)
      : disks_(effective_disks(disks, variant)), variant_(variant), s_(s), t_(t), w_(w) {
    validate_endpoints(disks_.size(), s, t);
    if (variant != Variant::DisksWeightedCenters && variant != Variant::UnitWeighted) {
      throw InvalidParameter("center Dijkstra needs center-distance weights");
    }
    if (!(w >= 0.0)) throw InvalidParameter("weight budget must be non-negative");
    const std::size_t n = disks_.size();
    delta_.assign(n, std::numeric_limits<double>::infinity());
    prev_.assign(n, -1);
    reached_.assign(n, 0);
    delta_[s] = 0.0;
    reached_[s] = 1;
    std::vector<FilteredSite> u;
    u.reserve(n);
    for (const Disk& d : disks_) {
      if (d.id != s) u.push_back(unreached_site(d));
    }
    tree_u_ = std::make_unique<UnreachedTree>(std::move(u), &log_);
    tree_r_ = std::make_shared<ReachedTree>(std::vector<FilteredSite>{reached_site(disks_[s], 0.0)});
    if (s == t) status_ = kYes;
  }

  std::string_view name() const override { return "center-dijkstra"; }
  bool finished() const override { return status_ != kRunning; }
  bool feasible() const override { return status_ == kYes; }
  const std::vector<double>& labels() const noexcept { return delta_; }
  const std::vector<int>& settle_order() const noexcept { return order_; }

  PathResult path() const override {
    if (status_ != kYes) return {};
    PathResult out = trace_path(prev_, s_, t_);
    out.weight = delta_[t_];
    return out;
  }

  std::uint64_t fingerprint() const override {
    Fingerprint f;
    f.add(status_);
    f.add(static_cast<int>(started_));
    f.add_all(delta_);
    f.add_all(prev_);
    f.add_all(reached_);
    f.add_all(buffer_);
    f.add(static_cast<std::uint64_t>(tree_r_->size()));
    f.add(static_cast<std::uint64_t>(tree_u_->live_count()));
    for (const auto& e : entries_) {
      f.add(e.key);
      f.add(e.from);
      f.add(e.to);
    }
    return f.value();
  }

 protected:
  void step(ThresholdOracle& oracle) override {
    UndoLog* log = &log_;
    if (!started_) {
      push_entry(oracle, s_);
      journal::assign(log, started_, true);
      return;
    }
    if (entries_.empty()) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    const detail::PairEntry e = *entries_.begin();
    if (e.key > w_) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    journal::erase(log, entries_, e);
    if (!tree_u_->contains(e.to)) {
      push_entry(oracle, e.from);
      return;
    }
    if (debug_ && oracle.mode() == ThresholdOracle::Mode::Concrete) {
      check_closest_pair(e, oracle.threshold());
    }

    // Resolve the label of the disk being settled from the reached side.
    const Disk& y = disks_[e.to];
    auto passes = [&](int id) { return test_edge(oracle, critical_value(disks_[id], y, variant_)); };
    auto best = tree_r_->query(detail::disk_query(y), passes, &cost_);
    for (int b : buffer_) {
      cost_.add();
      if (!passes(b)) continue;
      const double v = delta_[b] + distance(y.center, disks_[b].center);
      if (!best || better(v, b, *best)) best = NNResult{b, v};
    }
    if (!best) throw InternalFault("settled disk has no reached neighbor");
    if (debug_ && best->value != e.key) {
      throw InternalFault("closest-pair key disagrees with the reached-side label");
    }

    journal::assign(log, delta_[e.to], best->value);
    journal::assign(log, prev_[e.to], best->id);
    journal::assign(log, reached_[e.to], char{1});
    journal::push_back(log, order_, e.to);
    cost_.add();
    tree_u_->erase(e.to);
    insert_reached(e.to);
    if (e.to == t_) {
      journal::assign(log, status_, static_cast<int>(delta_[t_] <= w_ ? kYes : kNo));
      return;
    }
    push_entry(oracle, e.to);
    push_entry(oracle, e.from);
  }

 private:
  void push_entry(ThresholdOracle& oracle, int from) {
    if (tree_u_->live_count() == 0) return;
    const Disk& d = disks_[from];
    auto passes = [&](int id) { return test_edge(oracle, critical_value(d, disks_[id], variant_)); };
    auto nn = tree_u_->query(detail::disk_query(d), passes, &cost_);
    if (!nn) return;  // no unreached disk in range: d is dead
    journal::insert(&log_, entries_, detail::PairEntry{delta_[from] + nn->value, from, nn->id});
  }

  void insert_reached(int id) {
    journal::push_back(&log_, buffer_, id);
    if (buffer_.size() <= std::max<std::size_t>(8, tree_r_->size())) return;
    std::vector<FilteredSite> sites;
    for (std::size_t i = 0; i < disks_.size(); ++i) {
      if (reached_[i]) sites.push_back(reached_site(disks_[i], delta_[i]));
    }
    if (log_.active()) {
      log_.save_action([this, old = tree_r_] { tree_r_ = old; });
    }
    tree_r_ = std::make_shared<ReachedTree>(std::move(sites));
    journal::replace(&log_, buffer_, {});
  }

  void check_closest_pair(const detail::PairEntry& e, double r) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < disks_.size(); ++a) {
      if (!reached_[a]) continue;
      for (std::size_t b = 0; b < disks_.size(); ++b) {
        if (reached_[b] || !is_edge(disks_[a], disks_[b], variant_, r)) continue;
        best = std::min(best, delta_[a] + distance(disks_[a].center, disks_[b].center));
      }
    }
    if (best != e.key) throw InternalFault("extracted pair is not the constrained closest pair");
  }

  std::vector<Disk> disks_;
  Variant variant_;
  int s_;
  int t_;
  double w_;
  std::vector<double> delta_;
  std::vector<int> prev_;
  std::vector<char> reached_;
  std::vector<int> order_{};
  std::vector<int> buffer_;  // reached disks not yet in tree_r_
  std::set<detail::PairEntry> entries_;
  std::unique_ptr<UnreachedTree> tree_u_;
  std::shared_ptr<ReachedTree> tree_r_;
  bool started_ = false;
  int status_ = kRunning;
};

}  // namespace diskpath
