#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "diskpath/geometry.hpp"

namespace diskpath {

struct CellKey {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(k.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

/// Uniform grid bucketing points by (floor(x/c), floor(y/c)).
class GridIndex {
 public:
  /// Largest |coordinate / cell| accepted before cell indices lose precision.
  static constexpr double kMaxCellIndex = 4.0e15;

  GridIndex() = default;

  GridIndex(std::span<const Point2> points, double cell) : cell_(cell) {
    if (!(cell > 0.0) || !std::isfinite(cell)) throw InvalidParameter("grid cell must be positive");
    const std::size_t n = points.size();
    std::vector<std::pair<CellKey, int>> keyed(n);
    cell_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of_[i] = cell_of(points[i]);
      keyed[i] = {cell_of_[i], static_cast<int>(i)};
    }
    std::sort(keyed.begin(), keyed.end());
    ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      ids_[i] = keyed[i].second;
      if (i == 0 || !(keyed[i].first == keyed[i - 1].first)) {
        cells_.push_back(keyed[i].first);
        offsets_.push_back(static_cast<std::uint32_t>(i));
      }
    }
    offsets_.push_back(static_cast<std::uint32_t>(n));
    lookup_.reserve(cells_.size() * 2);
    for (std::size_t c = 0; c < cells_.size(); ++c) lookup_.emplace(cells_[c], c);
  }

  /// True when every point maps to a representable cell index.
  static bool fits(std::span<const Point2> points, double cell) noexcept {
    if (!(cell > 0.0) || !std::isfinite(cell)) return false;
    for (const Point2& p : points) {
      if (!(std::fabs(p.x / cell) < kMaxCellIndex) || !(std::fabs(p.y / cell) < kMaxCellIndex)) {
        return false;
      }
    }
    return true;
  }

  double cell_size() const noexcept { return cell_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  const std::vector<CellKey>& cells() const noexcept { return cells_; }

  CellKey cell_of(const Point2& p) const {
    const double fx = std::floor(p.x / cell_);
    const double fy = std::floor(p.y / cell_);
    if (!(std::fabs(fx) < kMaxCellIndex) || !(std::fabs(fy) < kMaxCellIndex)) {
      throw InvalidParameter("point too far from origin for this grid cell");
    }
    return CellKey{static_cast<std::int64_t>(fx), static_cast<std::int64_t>(fy)};
  }

  CellKey cell_of_point(int id) const noexcept { return cell_of_[id]; }

  /// Index of a non-empty cell, or -1.
  int find(const CellKey& k) const noexcept {
    auto it = lookup_.find(k);
    return it == lookup_.end() ? -1 : static_cast<int>(it->second);
  }

  std::span<const int> bucket_at(int index) const noexcept {
    return {ids_.data() + offsets_[index], ids_.data() + offsets_[index + 1]};
  }

  std::span<const int> bucket(const CellKey& k) const noexcept {
    const int idx = find(k);
    if (idx < 0) return {};
    return bucket_at(idx);
  }

  /// Non-empty cells whose indices differ from tau by at most 2 per axis.
  std::vector<CellKey> neighborhood(const CellKey& tau, bool include_self) const {
    std::vector<CellKey> out;
    out.reserve(25);
    for (std::int64_t dx = -2; dx <= 2; ++dx) {
      for (std::int64_t dy = -2; dy <= 2; ++dy) {
        if (dx == 0 && dy == 0 && !include_self) continue;
        CellKey k{tau.x + dx, tau.y + dy};
        if (find(k) >= 0) out.push_back(k);
      }
    }
    return out;
  }

 private:
  double cell_ = 1.0;
  std::vector<int> ids_;               // point ids grouped by cell, cells sorted
  std::vector<CellKey> cells_;         // sorted non-empty cells
  std::vector<std::uint32_t> offsets_;  // bucket boundaries into ids_
  std::vector<CellKey> cell_of_;
  std::unordered_map<CellKey, std::size_t, CellKeyHash> lookup_;
};

}  // namespace diskpath
