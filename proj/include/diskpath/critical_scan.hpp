#pragma once

// Enumeration of the critical values that fall inside a parameter interval,
// without materializing all pairs: only pairs whose centers are close enough
// to possibly qualify are visited, found through a grid.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "diskpath/geometry.hpp"
#include "diskpath/grid_index.hpp"
#include "diskpath/threshold_oracle.hpp"

namespace diskpath {

struct CriticalSummary {
  std::uint64_t count = 0;
  std::optional<CriticalValue> min;
  std::optional<CriticalValue> max;
  std::optional<CriticalValue> sample;  // uniform over the counted values, if requested
};

class CriticalScanner {
 public:
  /// Instances at most this large are always scanned pair by pair.
  static constexpr std::size_t kAllPairsBelow = 96;

  CriticalScanner(std::span<const Disk> disks, Variant variant)
      : disks_(effective_disks(disks, variant)), variant_(variant) {
    for (const Disk& d : disks_) {
      max_radius_ = std::max(max_radius_, d.radius);
      box_.extend(d.center);
    }
  }

  Variant variant() const noexcept { return variant_; }
  std::size_t size() const noexcept { return disks_.size(); }

  /// Calls fn(CriticalValue) for every pair whose critical value lies in iv,
  /// in an order that depends only on the instance and iv.hi.
  template <class Fn>
  void for_each(const Interval& iv, Fn&& fn) const {
    if (iv.empty() || disks_.size() < 2) return;
    auto visit = [&](const Disk& a, const Disk& b) {
      auto v = pair_critical(a, b, variant_);
      if (!v || !iv.contains(*v)) return;
      fn(CriticalValue{*v, std::min(a.id, b.id), std::max(a.id, b.id), variant_});
    };
    const std::optional<double> reach = center_reach(iv.hi);
    if (reach && *reach < 0.0) return;
    const double extent = std::max(box_.xmax - box_.xmin, box_.ymax - box_.ymin);
    if (!reach || disks_.size() < kAllPairsBelow || *reach >= extent) {
      for (std::size_t i = 0; i < disks_.size(); ++i) {
        for (std::size_t j = i + 1; j < disks_.size(); ++j) visit(disks_[i], disks_[j]);
      }
      return;
    }
    // Cells at least as wide as the reach: qualifying pairs share a cell or
    // sit in adjacent cells. Each adjacent pair of cells is visited once.
    double cell = std::max({*reach * (1.0 + 1e-9), extent * 1e-9, 1e-300});
    std::vector<Point2> pts;
    pts.reserve(disks_.size());
    for (const Disk& d : disks_) pts.push_back(d.center);
    if (!GridIndex::fits(pts, cell)) {
      for (std::size_t i = 0; i < disks_.size(); ++i) {
        for (std::size_t j = i + 1; j < disks_.size(); ++j) visit(disks_[i], disks_[j]);
      }
      return;
    }
    const GridIndex grid(pts, cell);
    static constexpr std::int64_t kForward[4][2] = {{1, -1}, {1, 0}, {1, 1}, {0, 1}};
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
      const auto own = grid.bucket_at(static_cast<int>(c));
      for (std::size_t i = 0; i < own.size(); ++i) {
        for (std::size_t j = i + 1; j < own.size(); ++j) visit(disks_[own[i]], disks_[own[j]]);
      }
      const CellKey key = grid.cells()[c];
      for (const auto& off : kForward) {
        const auto other = grid.bucket(CellKey{key.x + off[0], key.y + off[1]});
        for (int a : own) {
          for (int b : other) visit(disks_[a], disks_[b]);
        }
      }
    }
  }

  /// Count, extremes and (given an engine) one uniformly sampled value.
  CriticalSummary summarize(const Interval& iv, std::mt19937_64* rng = nullptr) const {
    CriticalSummary out;
    for_each(iv, [&](const CriticalValue& c) {
      ++out.count;
      if (!out.min || c < *out.min) out.min = c;
      if (!out.max || *out.max < c) out.max = c;
      if (rng) {
        // Reservoir sampling of size one.
        if (out.count == 1 || std::uniform_int_distribution<std::uint64_t>(0, out.count - 1)(*rng) == 0) {
          out.sample = c;
        }
      }
    });
    return out;
  }

  std::uint64_t count(const Interval& iv) const { return summarize(iv).count; }

  /// All values in iv, sorted.
  std::vector<CriticalValue> collect(const Interval& iv) const {
    std::vector<CriticalValue> out;
    for_each(iv, [&](const CriticalValue& c) { out.push_back(c); });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  /// Largest center distance of a pair whose critical value can be <= hi;
  /// nullopt when unbounded.
  std::optional<double> center_reach(double hi) const noexcept {
    if (!std::isfinite(hi)) return std::nullopt;
    double r = 0.0;
    switch (variant_) {
      case Variant::UnitUnweighted:
      case Variant::UnitWeighted: r = hi; break;
      case Variant::DisksUnweighted:
      case Variant::DisksWeightedGaps:
      case Variant::DisksWeightedCenters: r = hi + 2.0 * max_radius_; break;
      case Variant::AdditiveScale: r = 2.0 * hi + 2.0 * max_radius_; break;
      case Variant::MultiplicativeScale:
        // Degenerate pairs have no value; coincident centers still need a look.
        r = hi < 0.0 ? -1.0 : hi * 2.0 * max_radius_;
        break;
    }
    if (r < 0.0) return r;
    return r * (1.0 + 1e-12) + 1e-9 * (std::fabs(hi) + 2.0 * max_radius_) + 1e-300;
  }

  struct BBox {
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
  };

  std::vector<Disk> disks_;
  Variant variant_;
  double max_radius_ = 0.0;
  BBox box_;
};

}  // namespace diskpath
