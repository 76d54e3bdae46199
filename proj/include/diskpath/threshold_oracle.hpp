#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "diskpath/geometry.hpp"

namespace diskpath {

/// Closed parameter interval [lo, hi] known to contain the unknown optimum.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
  bool empty() const noexcept { return lo > hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Comparison { Le, Gt };

/// Thrown by a simulated oracle when a comparison cannot be resolved inside
/// its interval. Carries the critical value the decider asked about.
struct Suspension {
  CriticalValue critical;
};

/// The single comparator through which every parameter-dependent branch of a
/// decider flows.
class ThresholdOracle {
 public:
  enum class Mode { Concrete, Simulated };

  static ThresholdOracle concrete(double r) {
    ThresholdOracle o;
    o.mode_ = Mode::Concrete;
    o.r_ = r;
    return o;
  }

  static ThresholdOracle simulated(Interval iv) {
    ThresholdOracle o;
    o.mode_ = Mode::Simulated;
    o.interval_ = iv;
    return o;
  }

  Mode mode() const noexcept { return mode_; }
  double threshold() const noexcept { return r_; }
  const Interval& interval() const noexcept { return interval_; }
  void set_interval(Interval iv) noexcept { interval_ = iv; }

  std::uint64_t invocations() const noexcept { return invocations_; }

  /// Optional hook observing every comparison request (tests, transcripts).
  void set_observer(std::function<void(const CriticalValue&)> fn) { observer_ = std::move(fn); }

  Comparison compare(const CriticalValue& c) {
    ++invocations_;
    if (observer_) observer_(c);
    if (mode_ == Mode::Concrete) return c.value <= r_ ? Comparison::Le : Comparison::Gt;
    if (c.value <= interval_.lo) return Comparison::Le;
    if (c.value > interval_.hi) return Comparison::Gt;
    throw Suspension{c};
  }

  bool le(const CriticalValue& c) { return compare(c) == Comparison::Le; }

 private:
  ThresholdOracle() = default;

  Mode mode_ = Mode::Concrete;
  double r_ = 0.0;
  Interval interval_;
  std::uint64_t invocations_ = 0;
  std::function<void(const CriticalValue&)> observer_;
};

}  // namespace diskpath
