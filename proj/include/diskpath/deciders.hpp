#pragma once

#include <memory>
#include <optional>

#include "diskpath/general_disks.hpp"
#include "diskpath/unit_grid.hpp"

namespace diskpath {

enum class DeciderKind { GridBfs, GridDijkstra, DiskBfs, GapDijkstra, CenterDijkstra };

inline std::string_view decider_kind_name(DeciderKind k) noexcept {
  switch (k) {
    case DeciderKind::GridBfs: return "grid-bfs";
    case DeciderKind::GridDijkstra: return "grid-dijkstra";
    case DeciderKind::DiskBfs: return "disk-bfs";
    case DeciderKind::GapDijkstra: return "gap-dijkstra";
    case DeciderKind::CenterDijkstra: return "center-dijkstra";
  }
  return "unknown";
}

/// The decider the solver uses for a variant.
inline DeciderKind default_decider(Variant v) noexcept {
  switch (v) {
    case Variant::UnitUnweighted: return DeciderKind::GridBfs;
    case Variant::UnitWeighted: return DeciderKind::GridDijkstra;
    case Variant::DisksWeightedGaps: return DeciderKind::GapDijkstra;
    case Variant::DisksWeightedCenters: return DeciderKind::CenterDijkstra;
    default: return DeciderKind::DiskBfs;
  }
}

/// The general (grid-free) decider for a variant.
inline DeciderKind general_decider(Variant v) noexcept {
  switch (v) {
    case Variant::UnitWeighted:
    case Variant::DisksWeightedGaps: return DeciderKind::GapDijkstra;
    case Variant::DisksWeightedCenters: return DeciderKind::CenterDijkstra;
    default: return DeciderKind::DiskBfs;
  }
}

/// Every decider that is valid for a variant.
inline std::vector<DeciderKind> applicable_deciders(Variant v) {
  switch (v) {
    case Variant::UnitUnweighted: return {DeciderKind::GridBfs, DeciderKind::DiskBfs};
    case Variant::UnitWeighted:
      return {DeciderKind::GridDijkstra, DeciderKind::GapDijkstra, DeciderKind::CenterDijkstra};
    case Variant::DisksWeightedGaps: return {DeciderKind::GapDijkstra};
    case Variant::DisksWeightedCenters: return {DeciderKind::CenterDijkstra};
    default: return {DeciderKind::DiskBfs};
  }
}

/// Builds a decider. Grid deciders need a cell size.
inline std::unique_ptr<Decider> make_decider(DeciderKind kind, std::span<const Disk> disks,
                                             Variant variant, int s, int t, const Budget& budget,
                                             std::optional<double> cell = std::nullopt) {
  validate_budget(variant, budget);
  switch (kind) {
    case DeciderKind::GridBfs:
    case DeciderKind::GridDijkstra: {
      if (!is_unit(variant)) throw InvalidParameter("grid deciders need a unit variant");
      if (!cell) throw InvalidParameter("grid deciders need a cell size");
      if (kind == DeciderKind::GridBfs) {
        if (variant != Variant::UnitUnweighted) throw InvalidParameter("grid BFS is unweighted");
        return std::make_unique<GridBfsDecider>(disks, s, t, budget.k, *cell);
      }
      if (variant != Variant::UnitWeighted) throw InvalidParameter("grid Dijkstra is weighted");
      return std::make_unique<GridDijkstraDecider>(disks, s, t, budget.w, *cell);
    }
    case DeciderKind::DiskBfs:
      if (variant == Variant::MultiplicativeScale) {
        return std::make_unique<DiskBfsDecider<RatioKernel>>(disks, variant, s, t, budget.k);
      }
      return std::make_unique<DiskBfsDecider<GapKernel>>(disks, variant, s, t, budget.k);
    case DeciderKind::GapDijkstra:
      return std::make_unique<GapDijkstraDecider>(disks, variant, s, t, budget.w);
    case DeciderKind::CenterDijkstra:
      return std::make_unique<CenterDijkstraDecider>(disks, variant, s, t, budget.w);
  }
  throw InvalidParameter("unknown decider kind");
}

/// Grid cell for a concrete decision at r, or nullopt when the grid cannot
/// be used (non-positive r or coordinates too large for the cell).
inline std::optional<double> concrete_grid_cell(std::span<const Disk> disks, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) return std::nullopt;
  const double cell = grid_cell_for(r);
  if (!(cell > 0.0)) return std::nullopt;
  for (const Disk& d : disks) {
    if (!(std::fabs(d.center.x / cell) < GridIndex::kMaxCellIndex) ||
        !(std::fabs(d.center.y / cell) < GridIndex::kMaxCellIndex)) {
      return std::nullopt;
    }
  }
  return cell;
}

/// Builds the preferred decider for a concrete decision at r.
inline std::unique_ptr<Decider> make_concrete_decider(std::span<const Disk> disks, Variant variant,
                                                      int s, int t, const Budget& budget,
                                                      double r) {
  DeciderKind kind = default_decider(variant);
  std::optional<double> cell;
  if (is_unit(variant)) {
    cell = concrete_grid_cell(disks, r);
    if (!cell) kind = general_decider(variant);
  }
  return make_decider(kind, disks, variant, s, t, budget, cell);
}

struct Decision {
  bool feasible = false;
  PathResult path;
  std::uint64_t cost = 0;
};

/// Unsimulated decision at a concrete parameter value.
inline Decision decide_at(std::span<const Disk> disks, Variant variant, int s, int t,
                          const Budget& budget, double r, bool debug = false) {
  auto dec = make_concrete_decider(disks, variant, s, t, budget, r);
  dec->set_debug(debug);
  if (debug && disks.size() <= 4000) {
    if (auto* g = dynamic_cast<GridDijkstraDecider*>(dec.get())) {
      g->set_expected(dijkstra_all(build_graph(disks, variant, r), s));
    }
  }
  auto oracle = ThresholdOracle::concrete(r);
  Decision out;
  out.feasible = dec->run(oracle);
  out.path = dec->path();
  out.cost = dec->cost().units;
  return out;
}

inline bool decide(std::span<const Disk> disks, Variant variant, int s, int t,
                   const Budget& budget, double r) {
  return decide_at(disks, variant, s, t, budget, r).feasible;
}

}  // namespace diskpath
