#pragma once

// Grid-based deciders for unit-disk (point proximity) graphs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "diskpath/decider.hpp"
#include "diskpath/grid_index.hpp"
#include "diskpath/nn/filtered_nn_tree.hpp"
#include "diskpath/nn/weighted_nn.hpp"

namespace diskpath {

/// Grid cell for a threshold r: cell diameter strictly below r, so a cell's
/// points are pairwise adjacent, while every neighbor lies within two cells.
inline double grid_cell_for(double r) noexcept { return r / std::sqrt(2.0) * (1.0 - 1e-9); }

namespace detail {

inline std::vector<Point2> centers_of(std::span<const Disk> disks) {
  std::vector<Point2> pts;
  pts.reserve(disks.size());
  for (const Disk& d : disks) pts.push_back(d.center);
  return pts;
}

/// Additively weighted nearest neighbor over a handful of sites: a linear
/// scan for small sets, a kd-tree otherwise.
class LocalNN {
 public:
  static constexpr std::size_t kScan = 16;

  explicit LocalNN(std::vector<WeightedSite> sites) : sites_(std::move(sites)) {
    if (sites_.size() > kScan) tree_.emplace(sites_);
  }

  bool empty() const noexcept { return sites_.empty(); }

  NNResult nearest(const Point2& q) const {
    if (tree_) return tree_->nearest(NNQuery{q, 0.0});
    NNResult best;
    for (const WeightedSite& s : sites_) {
      const double v = s.weight + distance(q, s.point);
      if (better(v, s.id, best)) best = NNResult{s.id, v};
    }
    if (best.id < 0) throw EmptyStructure("nearest-neighbor query on an empty set");
    return best;
  }

 private:
  std::vector<WeightedSite> sites_;
  std::optional<WeightedNN<AdditiveKernel>> tree_;
};

}  // namespace detail

/// Hop-bounded BFS on the unit-disk graph. One step handles one occupied
/// cell of the current level.
class GridBfsDecider final : public Decider {
 public:
  GridBfsDecider(std::span<const Disk> points, int s, int t, std::int64_t k, double cell)
      : disks_(effective_disks(points, Variant::UnitUnweighted)), s_(s), t_(t), k_(k) {
    validate_endpoints(disks_.size(), s, t);
    if (k < 0) throw InvalidParameter("hop budget must be non-negative");
    const auto pts = detail::centers_of(disks_);
    grid_ = GridIndex(pts, cell);
    level_.assign(disks_.size(), -1);
    prev_.assign(disks_.size(), -1);
    level_[s] = 0;
    if (s == t) {
      status_ = kYes;
    } else if (k == 0) {
      status_ = kNo;
    } else {
      active_.push_back(grid_.find(grid_.cell_of_point(s)));
    }
  }

  std::string_view name() const override { return "grid-bfs"; }
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
    f.add_all(active_);
    f.add_all(next_);
    return f.value();
  }

 protected:
  void step(ThresholdOracle& oracle) override {
    UndoLog* log = &log_;
    const int cell = active_[cursor_];
    const auto bucket = grid_.bucket_at(cell);
    const int next_level = level_i_ + 1;

    std::vector<WeightedSite> members;
    for (int p : bucket) {
      if (level_[p] == level_i_) members.push_back(WeightedSite{p, disks_[p].center, 0.0});
    }
    // Same-cell points are within the cell diameter, hence adjacent.
    for (int p : bucket) {
      if (level_[p] == -1) reach(log, p, members.front().id, next_level);
    }
    cost_.add(members.size());
    const detail::LocalNN nn(std::move(members));
    for (const CellKey& nb : grid_.neighborhood(grid_.cells()[cell], false)) {
      for (int p : grid_.bucket(nb)) {
        if (level_[p] != -1) continue;
        cost_.add();
        const NNResult q = nn.nearest(disks_[p].center);
        if (test_edge(oracle, critical_value(disks_[p], disks_[q.id], Variant::UnitUnweighted))) {
          reach(log, p, q.id, next_level);
        }
      }
    }

    journal::assign(log, cursor_, cursor_ + 1);
    if (level_[t_] != -1) {
      journal::assign(log, status_, static_cast<int>(kYes));
      return;
    }
    if (cursor_ < static_cast<int>(active_.size())) return;
    if (next_.empty() || next_level >= k_) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    std::vector<int> cells;
    cells.reserve(next_.size());
    for (int p : next_) cells.push_back(grid_.find(grid_.cell_of_point(p)));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    journal::replace(log, active_, std::move(cells));
    journal::replace(log, next_, {});
    journal::assign(log, level_i_, next_level);
    journal::assign(log, cursor_, 0);
  }

 private:
  void reach(UndoLog* log, int p, int from, int level) {
    journal::assign(log, level_[p], level);
    journal::assign(log, prev_[p], from);
    journal::push_back(log, next_, p);
  }

  std::vector<Disk> disks_;
  GridIndex grid_;
  int s_;
  int t_;
  std::int64_t k_;
  std::vector<int> level_;
  std::vector<int> prev_;
  std::vector<int> active_;  // occupied cells of the current level, sorted
  std::vector<int> next_;    // points reached at the next level
  int cursor_ = 0;
  int level_i_ = 0;
  int status_ = kRunning;
};

/// Weight-bounded Dijkstra on the unit-disk graph, extracting one minimum
/// label per step and settling its whole cell.
class GridDijkstraDecider final : public Decider {
 public:
  GridDijkstraDecider(std::span<const Disk> points, int s, int t, double w, double cell)
      : disks_(effective_disks(points, Variant::UnitWeighted)), s_(s), t_(t), w_(w) {
    validate_endpoints(disks_.size(), s, t);
    if (!(w >= 0.0)) throw InvalidParameter("weight budget must be non-negative");
    const auto pts = detail::centers_of(disks_);
    grid_ = GridIndex(pts, cell);
    const std::size_t n = disks_.size();
    label_.assign(n, std::numeric_limits<double>::infinity());
    prev_.assign(n, -1);
    in_u_.assign(n, 1);
    label_[s] = 0.0;
    queue_.insert(QueueKey{0.0, s});
    if (s == t) status_ = kYes;
  }

  std::string_view name() const override { return "grid-dijkstra"; }
  bool finished() const override { return status_ != kRunning; }
  bool feasible() const override { return status_ == kYes; }
  const std::vector<double>& labels() const noexcept { return label_; }
  bool settled(int p) const noexcept { return in_u_[p] == 0; }

  PathResult path() const override {
    if (status_ != kYes) return {};
    PathResult out = trace_path(prev_, s_, t_);
    out.weight = label_[t_];
    return out;
  }

  std::uint64_t fingerprint() const override {
    Fingerprint f;
    f.add(status_);
    f.add_all(label_);
    f.add_all(prev_);
    f.add_all(in_u_);
    f.add(static_cast<std::uint64_t>(queue_.size()));
    for (const QueueKey& e : queue_) {
      f.add(e.key);
      f.add(e.id);
    }
    return f.value();
  }

  /// Distances the settled labels are checked against in debug mode.
  void set_expected(std::vector<double> expected) { expected_ = std::move(expected); }

 protected:
  void step(ThresholdOracle& oracle) override {
    UndoLog* log = &log_;
    if (queue_.empty()) {
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    const auto [lv, v] = *queue_.begin();
    if (lv > w_) {
      // Every remaining label is at least lv, so t cannot end within budget.
      journal::assign(log, status_, static_cast<int>(kNo));
      return;
    }
    const CellKey tau = grid_.cell_of_point(v);
    const auto own = grid_.bucket(tau);
    const auto around = grid_.neighborhood(tau, true);

    // UPDATE(U_tau, U_N(tau)): the minimum label lies in tau and within r of
    // every point there, so no threshold test is needed.
    {
      std::vector<WeightedSite> sites;
      for (const CellKey& c : around) {
        for (int p : grid_.bucket(c)) {
          if (in_u_[p] && label_[p] < std::numeric_limits<double>::infinity()) {
            sites.push_back(WeightedSite{p, disks_[p].center, label_[p]});
          }
        }
      }
      cost_.add(sites.size());
      const detail::LocalNN nn(std::move(sites));
      for (int a : own) {
        if (!in_u_[a]) continue;
        cost_.add();
        const NNResult best = nn.nearest(disks_[a].center);
        if (best.value < label_[a]) relax(log, a, best.value, best.id);
      }
    }

    // UPDATE(U_N(tau), U_tau) through the label-sorted filtered tree. Points of
    // tau itself were already relaxed optimally above.
    {
      std::vector<FilteredSite> sites;
      for (int p : own) {
        if (in_u_[p]) sites.push_back(label_site(p, disks_[p].center, label_[p]));
      }
      cost_.add(sites.size());
      const LabelTree q(std::move(sites));
      for (const CellKey& c : around) {
        if (c == tau) continue;
        for (int b : grid_.bucket(c)) {
          if (!in_u_[b]) continue;
          const Disk& db = disks_[b];
          auto passes = [&](int id) {
            return test_edge(oracle, critical_value(db, disks_[id], Variant::UnitWeighted));
          };
          auto res = q.query(NNQuery{db.center, 0.0}, passes, &cost_);
          if (res && res->value < label_[b]) relax(log, b, res->value, res->id);
        }
      }
    }

    bool t_settled = false;
    for (int a : own) {
      if (!in_u_[a]) continue;
      if (debug_ && !expected_.empty()) check_settled(a);
      journal::erase(log, queue_, QueueKey{label_[a], a});
      journal::assign(log, in_u_[a], char{0});
      t_settled = t_settled || a == t_;
    }
    if (t_settled) {
      journal::assign(log, status_, static_cast<int>(label_[t_] <= w_ ? kYes : kNo));
    }
  }

 private:
  void relax(UndoLog* log, int p, double value, int from) {
    if (label_[p] < std::numeric_limits<double>::infinity()) {
      journal::erase(log, queue_, QueueKey{label_[p], p});
    }
    journal::assign(log, label_[p], value);
    journal::assign(log, prev_[p], from);
    journal::insert(log, queue_, QueueKey{value, p});
  }

  void check_settled(int p) const {
    const double want = expected_[p];
    const double got = label_[p];
    if (got == want) return;
    if (std::isfinite(want) && std::fabs(got - want) <= 1e-9 * (1.0 + std::fabs(want))) return;
    throw InternalFault("grid Dijkstra settled point " + std::to_string(p) +
                        " with a label different from its shortest-path distance");
  }

  std::vector<Disk> disks_;
  GridIndex grid_;
  int s_;
  int t_;
  double w_;
  std::vector<double> label_;
  std::vector<int> prev_;
  std::vector<char> in_u_;
  std::set<QueueKey> queue_;
  std::vector<double> expected_;
  int status_ = kRunning;
};

}  // namespace diskpath
