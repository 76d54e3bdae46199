#pragma once

// Parametric search for the smallest critical value at which a budgeted
// s-t path exists: randomized interval shrinking, then phases that simulate
// the decider generically over an interval, fork it at unresolved
// comparisons, and binary-search the collected critical values.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "diskpath/critical_scan.hpp"
#include "diskpath/deciders.hpp"

namespace diskpath {

/// Phase parameters; zero fields are derived from the instance size.
struct PhaseParams {
  std::uint64_t L = 0;  // critical values left after shrinking
  std::uint64_t X = 0;  // distinct bifurcation values per phase
  std::uint64_t Y = 0;  // work budget of a tree path, in cost units
};

struct SolveOptions {
  std::uint64_t seed = 1;
  double epsilon = 0.25;
  PhaseParams params;
  bool debug = debug_assertions_from_env();
  bool transcript = true;
};

struct SolveStats {
  std::uint64_t L = 0;
  std::uint64_t X = 0;
  std::uint64_t Y = 0;
  std::uint64_t decision_cost = 0;  // cost of the feasibility decision, used for Y
  std::uint64_t optimum_cost = 0;   // cost of a full simulated-configuration run at the optimum
  std::uint64_t phases = 0;
  std::uint64_t phases_type_i = 0;   // stopped after X bifurcation values
  std::uint64_t phases_type_ii = 0;  // every path hit its budget or finished
  std::uint64_t bifurcations = 0;
  std::uint64_t unsimulated_decisions = 0;
  std::uint64_t criticals_searched = 0;
  std::uint64_t shrink_rounds = 0;
  std::uint64_t shrunk_count = 0;  // critical values left after shrinking
  std::uint64_t simulated_steps = 0;
  double grid_cell = 0.0;  // 0 when no grid is used
  bool exhausted = false;
  std::vector<std::string> transcript;

  std::uint64_t type_i_bound() const noexcept { return (L + X - 1) / std::max<std::uint64_t>(X, 1) + 1; }
  std::uint64_t type_ii_bound() const noexcept {
    return (optimum_cost + Y - 1) / std::max<std::uint64_t>(Y, 1) + 1;
  }
  bool phase_bounds_hold() const noexcept {
    return phases_type_i <= type_i_bound() && phases_type_ii <= type_ii_bound();
  }
};

struct SolveResult {
  RspAnswer answer;
  PathResult path;
  SolveStats stats;
};

inline PhaseParams default_phase_params(std::size_t n, bool unit, std::uint64_t decision_cost) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  const double logn = std::max(1.0, std::log2(nn));
  PhaseParams p;
  p.L = static_cast<std::uint64_t>(std::ceil(std::pow(nn, unit ? 0.4 : 0.5)));
  p.L = std::max<std::uint64_t>(p.L, 2);
  p.X = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(p.L) * logn)));
  p.X = std::max<std::uint64_t>(p.X, 2);
  p.Y = static_cast<std::uint64_t>(std::ceil(static_cast<double>(decision_cost) * std::sqrt(logn) /
                                             std::sqrt(static_cast<double>(p.L))));
  p.Y = std::max<std::uint64_t>(p.Y, 16);
  return p;
}

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace detail

/// Result of the geometric scale search for unit variants.
struct GridScale {
  double r_low = 0.0;   // r_j, a lower bound on the optimum
  double r_high = 0.0;  // upper bound, below (1 + eps) r_j
  double cell = 0.0;
};

/// Finds r_j in r_1 < r_2 < ... (ratio 1 + eps, capped at |t - s|) with
/// r_j <= r* < r_{j+1}, using unsimulated decisions just below each r_j.
inline GridScale grid_scale_sequence(double ts, double r1, double epsilon,
                                     const std::function<bool(double)>& decide_fn) {
  if (!(epsilon > 0.0) || epsilon > 0.25) throw InvalidParameter("epsilon must lie in (0, 0.25]");
  if (!(ts > 0.0)) throw InvalidParameter("grid scale needs distinct source and target");
  std::vector<double> seq;
  for (double r = std::min(r1, ts); r < ts; r *= 1.0 + epsilon) seq.push_back(r);
  seq.push_back(ts);
  auto below = [&](double r) { return decide_fn(next_down(r)); };
  // Extend downward until the first value is a certified lower bound.
  for (int guard = 0; below(seq.front()); ++guard) {
    if (guard > 2000 || seq.front() < 1e-300) throw InternalFault("grid scale search diverged");
    seq.insert(seq.begin(), seq.front() / (1.0 + epsilon));
  }
  std::size_t lo = 0;               // below(seq[lo]) == false
  std::size_t hi = seq.size();      // sentinel: feasible at ts
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (below(seq[mid])) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  GridScale g;
  g.r_low = seq[lo];
  g.r_high = lo + 1 < seq.size() ? next_down(seq[lo + 1]) : ts;
  g.cell = grid_cell_for(g.r_low);
  return g;
}

/// Serial parametric search over one instance.
class ParametricSearch {
 public:
  ParametricSearch(std::span<const Disk> disks, Variant variant, int s, int t, Budget budget,
                   SolveOptions options)
      : disks_(disks.begin(), disks.end()),
        variant_(variant),
        s_(s),
        t_(t),
        budget_(budget),
        options_(options),
        scanner_(disks_, variant),
        rng_(options.seed) {}

  SolveResult run() {
    validate_instance(disks_, variant_);
    validate_endpoints(disks_.size(), s_, t_);
    validate_budget(variant_, budget_);
    SolveResult out;
    if (s_ == t_) {
      out.answer = RspAnswer{true, 0.0, std::nullopt};
      out.path = PathResult{true, 0, is_weighted(variant_) ? std::optional<double>(0.0) : std::nullopt, {s_}};
      return out;
    }
    if (budget_.kind == Budget::Kind::Hops && budget_.k == 0) {
      throw Infeasible("a zero hop budget cannot connect distinct disks");
    }

    const Interval start = initial_interval();
    Interval iv = start;
    std::optional<double> exact;
    if (iv.lo == iv.hi) exact = iv.lo;
    if (!exact) iv = shrink(iv);

    while (!exact) {
      const CriticalSummary sum = scanner_.summarize(iv);
      if (sum.count == 0) throw InternalFault("search interval lost the optimum");
      if (sum.min->value == sum.max->value) {
        exact = sum.min->value;
        break;
      }
      const PhaseOutcome o = phase(iv, *sum.min);
      if (o.exact) {
        exact = *o.exact;
      } else {
        iv = o.next;
      }
    }

    // Report the smallest witness among the pairs realizing the optimum.
    const CriticalSummary at = scanner_.summarize(Interval{*exact, *exact});
    if (!at.min) throw InternalFault("optimum is not a critical value");
    out.answer = RspAnswer{true, *exact, *at.min};
    Decision final_run = decide_at(disks_, variant_, s_, t_, budget_, *exact, options_.debug);
    ++stats_.unsimulated_decisions;
    if (!final_run.feasible) throw InternalFault("decision at the optimum is infeasible");
    out.path = std::move(final_run.path);
    if (is_weighted(variant_) && !out.path.weight) out.path.weight = path_weight(out.path.path);
    stats_.optimum_cost = simulated_config_cost(*exact);
    if (options_.debug && !stats_.phase_bounds_hold()) {
      throw InternalFault("phase counts exceed their bounds");
    }
    out.stats = std::move(stats_);
    return out;
  }

 private:
  struct PhaseOutcome {
    std::optional<double> exact;
    Interval next;
  };

  void note(std::string line) {
    if (options_.transcript) stats_.transcript.push_back(std::move(line));
  }

  bool unsimulated(double r) {
    ++stats_.unsimulated_decisions;
    return decide_at(disks_, variant_, s_, t_, budget_, r, options_.debug).feasible;
  }

  double path_weight(const std::vector<int>& path) const {
    double w = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
      w += edge_weight(disks_[path[i - 1]], disks_[path[i]], variant_);
    }
    return w;
  }

  std::unique_ptr<Decider> fresh_decider() const {
    auto d = make_decider(kind_, disks_, variant_, s_, t_, budget_, cell_);
    d->set_debug(options_.debug);
    return d;
  }

  std::uint64_t simulated_config_cost(double r) const {
    auto d = fresh_decider();
    auto oracle = ThresholdOracle::concrete(r);
    d->run(oracle);
    return d->cost().units;
  }

  /// Feasibility check plus the starting interval (and grid) for the search.
  Interval initial_interval() {
    kind_ = general_decider(variant_);
    double hi = 0.0;
    bool ok = false;
    std::uint64_t cost = 0;
    auto check = [&](double r) {
      ++stats_.unsimulated_decisions;
      Decision d = decide_at(disks_, variant_, s_, t_, budget_, r, options_.debug);
      cost = d.cost;
      return d.feasible;
    };
    if (auto st = pair_critical(disks_[s_], disks_[t_], variant_); st && check(*st)) {
      hi = *st;
      ok = true;
    } else {
      const CriticalSummary all = scanner_.summarize(Interval{});
      if (all.max && check(all.max->value)) {
        hi = all.max->value;
        ok = true;
      }
    }
    if (!ok) throw Infeasible("no path within budget even at the largest critical value");
    stats_.decision_cost = cost;
    note(detail::fmt("feasible at %.17g", hi));

    Interval iv{-std::numeric_limits<double>::infinity(), hi};
    if (is_unit(variant_)) {
      const double ts = distance(disks_[s_].center, disks_[t_].center);
      if (ts == 0.0) return Interval{0.0, 0.0};
      if (hi == ts) {
        const double divisor = budget_.kind == Budget::Kind::Hops
                                   ? static_cast<double>(budget_.k)
                                   : static_cast<double>(disks_.size());
        const GridScale g = grid_scale_sequence(ts, ts / divisor, options_.epsilon,
                                                [&](double r) { return unsimulated(r); });
        std::vector<Point2> pts;
        for (const Disk& d : disks_) pts.push_back(d.center);
        iv = Interval{g.r_low, std::min(g.r_high, hi)};
        if (GridIndex::fits(pts, g.cell)) {
          cell_ = g.cell;
          kind_ = default_decider(variant_);
          stats_.grid_cell = g.cell;
        }
        note(detail::fmt("grid scale [%.17g, %.17g]", iv.lo, iv.hi));
      }
    }
    return iv;
  }

  Interval shrink(Interval iv) {
    const PhaseParams def = default_phase_params(disks_.size(), is_unit(variant_), stats_.decision_cost);
    stats_.L = options_.params.L ? options_.params.L : def.L;
    stats_.X = options_.params.X ? options_.params.X : def.X;
    stats_.Y = options_.params.Y ? options_.params.Y : def.Y;
    while (true) {
      const CriticalSummary sum = scanner_.summarize(iv, &rng_);
      if (sum.count <= stats_.L || sum.min->value == sum.max->value) {
        stats_.shrunk_count = sum.count;
        note("shrunk to " + std::to_string(sum.count) + detail::fmt(" in [%.17g, %.17g]", iv.lo, iv.hi));
        return iv;
      }
      ++stats_.shrink_rounds;
      const double c = sum.sample->value;
      if (unsimulated(c)) {
        iv.hi = c;
      } else {
        iv.lo = next_up(c);
      }
    }
  }

  PhaseOutcome phase(const Interval& iv, const CriticalValue& lowest) {
    if (!decider_) {
      decider_ = fresh_decider();
      decider_->log().set_active(true);
    }
    Decider& dec = *decider_;
    ++stats_.phases;
    note("phase " + std::to_string(stats_.phases) + detail::fmt(" [%.17g, %.17g]", iv.lo, iv.hi));
    oracle_.set_interval(iv);

    std::optional<CriticalValue> first;
    while (!dec.finished()) {
      try {
        dec.run_step(oracle_);
        ++stats_.simulated_steps;
      } catch (const Suspension& s) {
        first = s.critical;
        break;
      }
    }
    if (!first) {
      if (!dec.feasible()) throw InternalFault("simulation finished infeasible inside the interval");
      stats_.exhausted = true;
      note("exhausted");
      return PhaseOutcome{lowest.value, {}};
    }

    const Decider::Checkpoint root = dec.checkpoint();
    collected_.clear();
    stop_ = false;
    bifurcate(iv, *first, 0);
    dec.restore(root);
    if (options_.debug) shadow_check(root, iv);
    oracle_.set_interval(iv);
    if (stop_) {
      ++stats_.phases_type_i;
      note("type i");
    } else {
      ++stats_.phases_type_ii;
      note("type ii");
    }

    // Binary search over the collected values.
    const std::vector<double> vals(collected_.begin(), collected_.end());
    std::size_t lo = 0;
    std::size_t hi = vals.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      ++stats_.criticals_searched;
      const bool f = unsimulated(vals[mid]);
      note(detail::fmt("search %.17g -> %.0f", vals[mid], f ? 1.0 : 0.0));
      if (f) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    Interval next{lo > 0 ? next_up(vals[lo - 1]) : iv.lo, lo < vals.size() ? vals[lo] : iv.hi};
    if (lo < vals.size()) {
      if (!unsimulated(next_down(vals[lo]))) {
        note(detail::fmt("exact %.17g", vals[lo]));
        dec.log().commit();
        return PhaseOutcome{vals[lo], {}};
      }
      next.hi = next_down(vals[lo]);
    }
    dec.log().commit();
    return PhaseOutcome{std::nullopt, next};
  }

  void bifurcate(const Interval& node, const CriticalValue& c, std::uint64_t y_before) {
    ++stats_.bifurcations;
    collected_.insert(c.value);
    note(detail::fmt("bifurcate %.17g", c.value) + " (" + std::to_string(c.first) + "," +
         std::to_string(c.second) + ")");
    if (collected_.size() >= stats_.X) {
      stop_ = true;
      return;
    }
    Decider& dec = *decider_;
    const Decider::Checkpoint cp = dec.checkpoint();
    const std::uint64_t fp = options_.debug ? dec.fingerprint() : 0;
    // Lower child first: r* < c.
    const Interval children[2] = {Interval{node.lo, next_down(c.value)}, Interval{c.value, node.hi}};
    for (const Interval& child : children) {
      if (stop_) break;
      if (child.empty()) continue;
      explore(child, y_before);
      dec.restore(cp);
      if (options_.debug) {
        if (dec.fingerprint() != fp) throw InternalFault("undo did not restore the decider state");
        shadow_check(cp, node);
      }
    }
  }

  void explore(const Interval& iv, std::uint64_t y_before) {
    Decider& dec = *decider_;
    oracle_.set_interval(iv);
    const std::uint64_t start = dec.cost().units;
    while (true) {
      const std::uint64_t y = dec.cost().units - start;
      if (y_before + y >= stats_.Y) {
        note("leaf incomplete");
        return;
      }
      if (dec.finished()) {
        note(dec.feasible() ? "leaf feasible" : "leaf infeasible");
        return;
      }
      try {
        dec.run_step(oracle_);
        ++stats_.simulated_steps;
      } catch (const Suspension& s) {
        bifurcate(iv, s.critical, y_before + (dec.cost().units - start));
        return;
      }
    }
  }

  /// Replays a fresh decider to the checkpoint's step count and compares
  /// fingerprints with the rewound one.
  void shadow_check(const Decider::Checkpoint& cp, const Interval& iv) {
    auto shadow = fresh_decider();
    shadow->log().set_active(true);
    auto oracle = ThresholdOracle::simulated(iv);
    try {
      while (shadow->steps() < cp.steps) shadow->run_step(oracle);
    } catch (const Suspension&) {
      throw InternalFault("shadow replay suspended on a resolved path");
    }
    if (shadow->fingerprint() != decider_->fingerprint()) {
      throw InternalFault("rewound decider differs from a fresh replay");
    }
  }

  std::vector<Disk> disks_;
  Variant variant_;
  int s_;
  int t_;
  Budget budget_;
  SolveOptions options_;
  CriticalScanner scanner_;
  std::mt19937_64 rng_;
  SolveStats stats_;
  DeciderKind kind_ = DeciderKind::DiskBfs;
  std::optional<double> cell_;
  std::unique_ptr<Decider> decider_;
  ThresholdOracle oracle_ = ThresholdOracle::simulated(Interval{});
  std::set<double> collected_;
  bool stop_ = false;
};

inline SolveResult solve(std::span<const Disk> disks, Variant variant, int s, int t,
                         const Budget& budget, const SolveOptions& options = {}) {
  ParametricSearch search(disks, variant, s, t, budget, options);
  return search.run();
}

/// Interval shrinking on its own: an interval containing the optimum and at
/// most L critical values (or a single distinct value).
inline Interval shrink_interval(std::span<const Disk> disks, Variant variant, int s, int t,
                                const Budget& budget, std::uint64_t L, std::uint64_t seed = 1) {
  validate_endpoints(disks.size(), s, t);
  validate_budget(variant, budget);
  CriticalScanner scanner(disks, variant);
  const CriticalSummary all = scanner.summarize(Interval{});
  if (!all.max || !decide(disks, variant, s, t, budget, all.max->value)) {
    throw Infeasible("no path within budget even at the largest critical value");
  }
  std::mt19937_64 rng(seed);
  Interval iv{-std::numeric_limits<double>::infinity(), all.max->value};
  while (true) {
    const CriticalSummary sum = scanner.summarize(iv, &rng);
    if (sum.count <= L || sum.min->value == sum.max->value) return iv;
    const double c = sum.sample->value;
    if (decide(disks, variant, s, t, budget, c)) {
      iv.hi = c;
    } else {
      iv.lo = next_up(c);
    }
  }
}

}  // namespace diskpath
