#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diskpath {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A multiplicative critical value requested for a pair with zero radius sum.
class DegenerateCritical : public Error {
 public:
  using Error::Error;
};

class InvalidVertex : public Error {
 public:
  using Error::Error;
};

class EmptyStructure : public Error {
 public:
  using Error::Error;
};

class AlreadyDeleted : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (a bug, not bad input).
class InternalFault : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Primitives

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

struct Disk {
  int id = 0;
  Point2 center;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

enum class Variant {
  UnitUnweighted,
  UnitWeighted,
  DisksUnweighted,
  DisksWeightedGaps,
  DisksWeightedCenters,
  AdditiveScale,
  MultiplicativeScale,
};

inline constexpr Variant kAllVariants[] = {
    Variant::UnitUnweighted,       Variant::UnitWeighted,  Variant::DisksUnweighted,
    Variant::DisksWeightedGaps,    Variant::DisksWeightedCenters,
    Variant::AdditiveScale,        Variant::MultiplicativeScale,
};

constexpr bool is_unit(Variant v) noexcept {
  return v == Variant::UnitUnweighted || v == Variant::UnitWeighted;
}

constexpr bool is_weighted(Variant v) noexcept {
  return v == Variant::UnitWeighted || v == Variant::DisksWeightedGaps ||
         v == Variant::DisksWeightedCenters;
}

inline std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::UnitUnweighted: return "unit-unweighted";
    case Variant::UnitWeighted: return "unit-weighted";
    case Variant::DisksUnweighted: return "disks-unweighted";
    case Variant::DisksWeightedGaps: return "disks-gaps";
    case Variant::DisksWeightedCenters: return "disks-centers";
    case Variant::AdditiveScale: return "additive";
    case Variant::MultiplicativeScale: return "multiplicative";
  }
  return "unknown";
}

inline std::optional<Variant> parse_variant(std::string_view name) noexcept {
  for (Variant v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

/// Name of the optimized parameter, as used in reports.
inline std::string_view parameter_name(Variant v) noexcept {
  switch (v) {
    case Variant::AdditiveScale: return "alpha_star";
    case Variant::MultiplicativeScale: return "lambda_star";
    default: return "r_star";
  }
}

// ---------------------------------------------------------------------------
// Critical values

/// A parameter value at which the edge between the witness pair appears.
/// Ordered by value, then by witness pair.
struct CriticalValue {
  double value = 0.0;
  int first = 0;
  int second = 0;
  Variant variant = Variant::UnitUnweighted;

  friend bool operator==(const CriticalValue& a, const CriticalValue& b) noexcept {
    return a.value == b.value && a.first == b.first && a.second == b.second;
  }
  friend std::strong_ordering operator<=>(const CriticalValue& a,
                                          const CriticalValue& b) noexcept {
    if (a.value < b.value) return std::strong_ordering::less;
    if (a.value > b.value) return std::strong_ordering::greater;
    if (auto c = a.first <=> b.first; c != 0) return c;
    return a.second <=> b.second;
  }
};

/// Clearance between two disks; negative when they overlap.
inline double gap_distance(const Disk& a, const Disk& b) noexcept {
  return distance(a.center, b.center) - (a.radius + b.radius);
}

inline double edge_weight(const Disk& a, const Disk& b, Variant variant) {
  switch (variant) {
    case Variant::DisksWeightedGaps: return std::max(0.0, gap_distance(a, b));
    case Variant::DisksWeightedCenters:
    case Variant::UnitWeighted: return distance(a.center, b.center);
    default:
      throw InvalidParameter("edge_weight: variant " + std::string(variant_name(variant)) +
                             " is unweighted");
  }
}

/// Raw critical value of a pair, or nullopt for a degenerate multiplicative pair.
inline std::optional<double> pair_critical(const Disk& a, const Disk& b, Variant variant) noexcept {
  switch (variant) {
    case Variant::UnitUnweighted:
    case Variant::UnitWeighted: return distance(a.center, b.center);
    case Variant::DisksUnweighted:
    case Variant::DisksWeightedGaps:
    case Variant::DisksWeightedCenters: return gap_distance(a, b);
    case Variant::AdditiveScale: return 0.5 * gap_distance(a, b);
    case Variant::MultiplicativeScale: {
      const double sum = a.radius + b.radius;
      if (sum == 0.0) return std::nullopt;
      return distance(a.center, b.center) / sum;
    }
  }
  return std::nullopt;
}

inline CriticalValue critical_value(const Disk& a, const Disk& b, Variant variant) {
  if (a.id == b.id) throw InvalidParameter("critical_value: witness ids must differ");
  auto value = pair_critical(a, b, variant);
  if (!value) {
    throw DegenerateCritical("pair (" + std::to_string(a.id) + "," + std::to_string(b.id) +
                             ") has zero radius sum");
  }
  return CriticalValue{*value, std::min(a.id, b.id), std::max(a.id, b.id), variant};
}

/// Edge predicate of the graph at parameter r (closed comparison).
/// Degenerate multiplicative pairs are adjacent iff their centers coincide.
inline bool is_edge(const Disk& a, const Disk& b, Variant variant, double r) noexcept {
  auto value = pair_critical(a, b, variant);
  if (!value) return a.center == b.center;
  return *value <= r;
}

/// Radii after scaling; turns a scaling decision into an intersection-graph decision.
inline std::vector<Disk> scaled_instance(std::span<const Disk> disks, Variant variant,
                                         double param) {
  if (variant != Variant::AdditiveScale && variant != Variant::MultiplicativeScale) {
    throw InvalidParameter("scaled_instance: variant is not a scaling variant");
  }
  if (!(param > 0.0)) throw InvalidParameter("scaled_instance: parameter must be positive");
  std::vector<Disk> out(disks.begin(), disks.end());
  for (Disk& d : out) {
    d.radius = variant == Variant::AdditiveScale ? d.radius + param : d.radius * param;
  }
  return out;
}

/// Validates ids and coordinates; unit variants also require equal radii.
inline void validate_instance(std::span<const Disk> disks, Variant variant) {
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const Disk& d = disks[i];
    if (d.id != static_cast<int>(i)) {
      throw InputError("disk ids must be contiguous 0..n-1 (found " + std::to_string(d.id) +
                       " at position " + std::to_string(i) + ")");
    }
    if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y) || !std::isfinite(d.radius)) {
      throw InputError("disk " + std::to_string(i) + " has non-finite data");
    }
    if (d.radius < 0.0) throw InputError("disk " + std::to_string(i) + " has negative radius");
    if (is_unit(variant) && d.radius != disks.front().radius) {
      throw InputError("unit variants require all radii equal");
    }
  }
}

/// Radii as seen by the deciders: unit variants use center distances only.
inline std::vector<Disk> effective_disks(std::span<const Disk> disks, Variant variant) {
  std::vector<Disk> out(disks.begin(), disks.end());
  if (is_unit(variant)) {
    for (Disk& d : out) d.radius = 0.0;
  }
  return out;
}

inline double next_up(double v) noexcept {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}
inline double next_down(double v) noexcept {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}

}  // namespace diskpath
