#pragma once

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string_view>
#include <vector>

#include "diskpath/reference.hpp"
#include "diskpath/threshold_oracle.hpp"
#include "diskpath/undo_log.hpp"

namespace diskpath {

/// Priority-queue key with a unique total order.
struct QueueKey {
  double key = 0.0;
  int id = 0;
  friend auto operator<=>(const QueueKey&, const QueueKey&) = default;
};

struct PathResult {
  bool reachable = false;
  std::optional<std::int64_t> hops;
  std::optional<double> weight;
  std::vector<int> path;
};

/// True when DISKPATH_DEBUG_ASSERT is set to a non-zero value.
inline bool debug_assertions_from_env() {
  const char* v = std::getenv("DISKPATH_DEBUG_ASSERT");
  return v != nullptr && *v != '\0' && std::strcmp(v, "0") != 0;
}

/// 64-bit FNV-1a accumulator for state fingerprints.
class Fingerprint {
 public:
  void add(std::uint64_t word) noexcept {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (word >> (8 * i)) & 0xFF;
      h_ *= 0x100000001B3ULL;
    }
  }
  void add(double v) noexcept {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    add(bits);
  }
  void add(int v) noexcept { add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  template <class T>
  void add_all(const std::vector<T>& v) noexcept {
    add(static_cast<std::uint64_t>(v.size()));
    for (const T& x : v) add(x);
  }
  std::uint64_t value() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

/// A decision procedure written as a resumable sequence of steps. Every
/// parameter-dependent branch goes through the oracle passed to step(), and
/// every state mutation goes through the undo log, so a simulated run can be
/// suspended, rewound and resumed under a narrower interval.
///
/// Deciders hold pointers to themselves in their journals and must not move.
class Decider {
 public:
  struct Checkpoint {
    UndoLog::Mark mark = 0;
    std::uint64_t units = 0;
    std::uint64_t steps = 0;
  };

  Decider() = default;
  Decider(const Decider&) = delete;
  Decider& operator=(const Decider&) = delete;
  virtual ~Decider() = default;

  virtual std::string_view name() const = 0;
  virtual bool finished() const = 0;
  /// Valid once finished().
  virtual bool feasible() const = 0;
  virtual PathResult path() const = 0;
  virtual std::uint64_t fingerprint() const = 0;

  /// One bounded chunk of work. A Suspension escaping a step leaves the
  /// decider exactly as it was before the step.
  void run_step(ThresholdOracle& oracle) {
    if (oracle.mode() == ThresholdOracle::Mode::Simulated && !log_.active()) {
      throw InvalidParameter("simulated runs need an active undo log");
    }
    const Checkpoint before = checkpoint();
    try {
      step(oracle);
    } catch (const Suspension&) {
      restore(before);
      throw;
    }
    ++steps_;
  }

  bool run(ThresholdOracle& oracle) {
    while (!finished()) run_step(oracle);
    return feasible();
  }

  Checkpoint checkpoint() const noexcept { return Checkpoint{log_.mark(), cost_.units, steps_}; }
  void restore(const Checkpoint& c) {
    log_.rollback(c.mark);
    cost_.units = c.units;
    steps_ = c.steps;
  }

  UndoLog& log() noexcept { return log_; }
  const CostMeter& cost() const noexcept { return cost_; }
  std::uint64_t steps() const noexcept { return steps_; }

  void set_debug(bool on) noexcept { debug_ = on; }
  bool debug() const noexcept { return debug_; }

 protected:
  virtual void step(ThresholdOracle& oracle) = 0;

  bool test_edge(ThresholdOracle& oracle, const CriticalValue& c) {
    cost_.add();
    return oracle.le(c);
  }

  static PathResult trace_path(const std::vector<int>& prev, int s, int t) {
    PathResult out;
    out.reachable = true;
    for (int v = t; v != s; v = prev[v]) {
      if (v < 0 || out.path.size() > prev.size()) throw InternalFault("broken predecessor chain");
      out.path.push_back(v);
    }
    out.path.push_back(s);
    std::reverse(out.path.begin(), out.path.end());
    out.hops = static_cast<std::int64_t>(out.path.size()) - 1;
    return out;
  }

  UndoLog log_;
  CostMeter cost_;
  std::uint64_t steps_ = 0;
  bool debug_ = false;

  enum Status : int { kRunning = 0, kYes = 1, kNo = 2 };
};

}  // namespace diskpath
