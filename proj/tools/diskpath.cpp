// diskpath: command-line frontend.
//
// Exit codes: 0 feasible, 1 infeasible, 2 input error, 3 internal fault
// (including a failed --check-oracle comparison).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskpath/diskpath.hpp"

namespace {

using namespace diskpath;
using nlohmann::json;

enum Exit { kFeasible = 0, kInfeasibleExit = 1, kInputError = 2, kFault = 3 };

struct Common {
  std::string variant;
  std::string input;
  int source = 0;
  int target = 0;
  std::optional<std::int64_t> k;
  std::optional<double> w;
  std::string plot;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--variant", c.variant, "unit-unweighted, unit-weighted, disks-unweighted, "
                                          "disks-gaps, disks-centers, additive, multiplicative");
  cmd->add_option("--input", c.input, "instance file")->required();
  cmd->add_option("--source", c.source, "source disk id")->required();
  cmd->add_option("--target", c.target, "target disk id")->required();
  auto* k = cmd->add_option("--k", c.k, "hop budget (unweighted variants)");
  auto* w = cmd->add_option("--w", c.w, "weight budget (weighted variants)");
  k->excludes(w);
  cmd->add_option("--plot", c.plot, "write an SVG picture to this file");
}

struct Loaded {
  Instance inst;
  Variant variant;
  Budget budget;
};

Loaded load(const Common& c) {
  Loaded out;
  out.inst = read_instance(c.input);
  if (!c.variant.empty()) {
    auto v = parse_variant(c.variant);
    if (!v) throw InputError("unknown variant '" + c.variant + "'");
    out.variant = *v;
  } else if (out.inst.variant) {
    out.variant = *out.inst.variant;
  } else {
    throw InputError("no --variant given and the instance header names none");
  }
  validate_instance(out.inst.disks, out.variant);
  validate_endpoints(out.inst.disks.size(), c.source, c.target);
  if (is_weighted(out.variant)) {
    if (!c.w) throw InputError("weighted variant needs --w");
    out.budget = Budget::weight(*c.w);
  } else {
    if (!c.k) throw InputError("unweighted variant needs --k");
    out.budget = Budget::hops(*c.k);
  }
  validate_budget(out.variant, out.budget);
  return out;
}

json budget_json(const Budget& b) {
  return b.kind == Budget::Kind::Hops ? json{{"k", b.k}} : json{{"w", b.w}};
}

void path_fields(json& j, const PathResult& p, Variant v) {
  j["path"] = p.path;
  j["hops"] = p.path.empty() ? std::size_t{0} : p.path.size() - 1;
  if (is_weighted(v)) j["weight"] = p.weight.value_or(0.0);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::string number_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- decide

int cmd_decide(const Common& c, double r) {
  const auto t0 = std::chrono::steady_clock::now();
  Loaded L = load(c);
  const Decision d =
      decide_at(L.inst.disks, L.variant, c.source, c.target, L.budget, r, debug_assertions_from_env());
  json j;
  j["command"] = "decide";
  j["variant"] = variant_name(L.variant);
  j["source"] = c.source;
  j["target"] = c.target;
  j["budget"] = budget_json(L.budget);
  j["r"] = r;
  j["feasible"] = d.feasible;
  path_fields(j, d.path, L.variant);
  j["decision_cost"] = d.cost;
  j["wall_time_ms"] = elapsed_ms(t0);
  if (!c.plot.empty()) {
    PlotData plot{L.variant, r, d.path.path,
                  "decision at " + number_text(r) + (d.feasible ? ": feasible" : ": infeasible")};
    write_file(c.plot, render_svg(L.inst.disks, plot));
  }
  emit(j);
  return d.feasible ? kFeasible : kInfeasibleExit;
}

// ---------------------------------------------------------------- solve

PhaseParams parse_params(const std::string& text) {
  PhaseParams p;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--params expects L=..,X=..,Y=..");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(val, &used);
      if (used != val.size() || v == 0) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw InputError("--params value for " + key + " must be a positive integer");
    }
    if (key == "L") p.L = v;
    else if (key == "X") p.X = v;
    else if (key == "Y") p.Y = v;
    else throw InputError("--params key must be L, X or Y");
  }
  return p;
}

json stats_json(const SolveStats& s) {
  return json{{"L", s.L},
              {"X", s.X},
              {"Y", s.Y},
              {"decision_cost", s.decision_cost},
              {"optimum_cost", s.optimum_cost},
              {"phases", s.phases},
              {"phases_type_i", s.phases_type_i},
              {"phases_type_ii", s.phases_type_ii},
              {"type_i_bound", s.type_i_bound()},
              {"type_ii_bound", s.type_ii_bound()},
              {"bifurcations", s.bifurcations},
              {"unsimulated_decisions", s.unsimulated_decisions},
              {"criticals_searched", s.criticals_searched},
              {"shrink_rounds", s.shrink_rounds},
              {"shrunk_count", s.shrunk_count},
              {"simulated_steps", s.simulated_steps},
              {"grid_cell", s.grid_cell},
              {"exhausted", s.exhausted}};
}

struct SolveFlags {
  std::uint64_t seed = 1;
  double epsilon = 0.25;
  bool check_oracle = false;
  std::string params;
};

int cmd_solve(const Common& c, const SolveFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Loaded L = load(c);
  if (!(f.epsilon > 0.0 && f.epsilon <= 0.25)) throw InputError("--epsilon must be in (0, 0.25]");
  SolveOptions opt;
  opt.seed = f.seed;
  opt.epsilon = f.epsilon;
  opt.transcript = false;
  if (!f.params.empty()) opt.params = parse_params(f.params);

  json j;
  j["command"] = "solve";
  j["variant"] = variant_name(L.variant);
  j["source"] = c.source;
  j["target"] = c.target;
  j["budget"] = budget_json(L.budget);

  std::optional<SolveResult> res;
  try {
    res = solve(L.inst.disks, L.variant, c.source, c.target, L.budget, opt);
  } catch (const Infeasible& e) {
    j["feasible"] = false;
    j["reason"] = e.what();
  }

  std::string check = "off";
  if (f.check_oracle) {
    if (L.inst.disks.size() > 2000) {
      check = "skipped";
      std::cerr << "diskpath: --check-oracle skipped, n > 2000\n";
    } else {
      const RspAnswer naive = solve_naive(L.inst.disks, L.variant, c.source, c.target, L.budget);
      const bool same = res ? naive.feasible && naive.value == res->answer.value : !naive.feasible;
      if (!same) {
        std::cerr << "diskpath: ORACLE MISMATCH: solver "
                  << (res ? number_text(res->answer.value) : std::string("infeasible"))
                  << ", brute force "
                  << (naive.feasible ? number_text(naive.value) : std::string("infeasible")) << '\n';
        return kFault;
      }
      check = "passed";
    }
  }
  j["oracle_check"] = check;

  if (res) {
    const RspAnswer& a = res->answer;
    j["feasible"] = true;
    j[std::string(parameter_name(L.variant))] = a.value;
    if (a.critical) {
      j["critical"] = json{{"value", a.critical->value},
                           {"first", a.critical->first},
                           {"second", a.critical->second}};
    } else {
      j["critical"] = nullptr;
    }
    path_fields(j, res->path, L.variant);
    j["stats"] = stats_json(res->stats);
  }
  j["wall_time_ms"] = elapsed_ms(t0);

  if (!c.plot.empty()) {
    PlotData plot;
    plot.variant = L.variant;
    if (res) {
      plot.param = res->answer.value;
      plot.path = res->path.path;
      plot.caption = std::string(parameter_name(L.variant)) + " = " + number_text(res->answer.value);
    } else {
      plot.caption = "infeasible";
    }
    write_file(c.plot, render_svg(L.inst.disks, plot));
  }
  emit(j);
  return res ? kFeasible : kInfeasibleExit;
}

// ---------------------------------------------------------------- gen

struct GenFlags {
  std::string kind = "uniform";
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string radius = "zero";
  double side = 0.0;
  int clusters = 4;
  std::vector<double> spacing{1.0};
  std::string variant;
  std::string output;
};

int cmd_gen(const GenFlags& g) {
  GenSpec spec;
  auto kind = parse_gen_kind(g.kind);
  if (!kind) throw InputError("unknown generator kind '" + g.kind + "'");
  spec.kind = *kind;
  spec.n = g.n;
  spec.seed = g.seed;
  spec.radius = RadiusLaw::parse(g.radius);
  spec.side = g.side;
  spec.clusters = g.clusters;
  spec.spacing = g.spacing;
  Instance inst = generate(spec);
  if (!g.variant.empty()) {
    inst.variant = parse_variant(g.variant);
    if (!inst.variant) throw InputError("unknown variant '" + g.variant + "'");
  }
  const std::string text = instance_text(inst);
  if (g.output.empty() || g.output == "-") {
    std::cout << text;
  } else {
    write_file(g.output, text);
  }
  return kFeasible;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  std::string variant = "unit-unweighted";
  std::vector<std::size_t> sizes;
  int seeds = 3;
  std::string kind = "uniform";
  std::string radius;
  std::int64_t k = 8;
  double w_factor = 1.25;
  std::string params;
  std::string output;
};

int cmd_bench(const BenchFlags& b) {
  if (b.sizes.empty()) throw InputError("bench needs a non-empty --sizes list");
  if (b.seeds < 1) throw InputError("--seeds must be >= 1");
  auto variant = parse_variant(b.variant);
  if (!variant) throw InputError("unknown variant '" + b.variant + "'");
  auto kind = parse_gen_kind(b.kind);
  if (!kind) throw InputError("unknown generator kind '" + b.kind + "'");
  const std::string law = !b.radius.empty() ? b.radius : is_unit(*variant) ? "zero" : "uniform:0:2";

  std::ostringstream csv;
  csv << "n,seed,wall_ms,decision_calls,bifurcations,phases,value\n";
  for (std::size_t n : b.sizes) {
    if (n < 2) throw InputError("bench sizes must be >= 2");
    for (int seed = 1; seed <= b.seeds; ++seed) {
      GenSpec spec;
      spec.kind = *kind;
      spec.n = n;
      spec.seed = static_cast<std::uint64_t>(seed);
      spec.radius = RadiusLaw::parse(law);
      const Instance inst = generate(spec);
      // Target: the disk farthest from disk 0.
      int t = 1;
      for (const Disk& d : inst.disks) {
        if (distance(d.center, inst.disks[0].center) >
            distance(inst.disks[t].center, inst.disks[0].center)) {
          t = d.id;
        }
      }
      const Budget budget =
          is_weighted(*variant)
              ? Budget::weight(b.w_factor * distance(inst.disks[0].center, inst.disks[t].center))
              : Budget::hops(b.k);
      SolveOptions opt;
      opt.seed = static_cast<std::uint64_t>(seed);
      opt.transcript = false;
      if (!b.params.empty()) opt.params = parse_params(b.params);
      const auto t0 = std::chrono::steady_clock::now();
      std::string value = "infeasible";
      SolveStats stats;
      try {
        SolveResult r = solve(inst.disks, *variant, 0, t, budget, opt);
        value = number_text(r.answer.value);
        stats = r.stats;
      } catch (const Infeasible&) {
      }
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", elapsed_ms(t0));
      csv << n << ',' << seed << ',' << ms << ','
          << stats.unsimulated_decisions << ',' << stats.bifurcations << ',' << stats.phases << ','
          << value << '\n';
    }
  }
  if (b.output.empty() || b.output == "-") {
    std::cout << csv.str();
  } else {
    write_file(b.output, csv.str());
  }
  return kFeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse shortest paths in disk graphs"};
  app.require_subcommand(1);

  Common dc;
  double r = 0.0;
  auto* decide = app.add_subcommand("decide", "decide feasibility at a given parameter");
  add_common(decide, dc);
  decide->add_option("--r", r, "parameter value")->required();

  Common sc;
  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "find the optimal parameter");
  add_common(solve, sc);
  solve->add_option("--seed", sf.seed, "random seed");
  solve->add_option("--epsilon", sf.epsilon, "grid-scale step for unit variants, in (0, 0.25]");
  solve->add_flag("--check-oracle", sf.check_oracle, "compare with brute force (n <= 2000)");
  solve->add_option("--params", sf.params, "phase parameter overrides, e.g. L=64,X=8,Y=512");

  GenFlags gf;
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--kind", gf.kind, "uniform, clusters, line or annulus");
  gen->add_option("--n", gf.n, "number of disks")->required();
  gen->add_option("--seed", gf.seed, "random seed");
  gen->add_option("--radius", gf.radius, "zero, const:C or uniform:A:B");
  gen->add_option("--side", gf.side, "side of the square region (default 2*sqrt(n))");
  gen->add_option("--clusters", gf.clusters, "number of clusters");
  gen->add_option("--spacing", gf.spacing, "line gaps, repeated cyclically")->delimiter(',');
  gen->add_option("--variant", gf.variant, "variant written into the header");
  gen->add_option("--output", gf.output, "output file (default stdout)");

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "solve generated instances and print a CSV table");
  bench->add_option("--variant", bf.variant, "variant");
  bench->add_option("--sizes", bf.sizes, "comma-separated instance sizes")->delimiter(',');
  bench->add_option("--seeds", bf.seeds, "seeds per size (1..S)");
  bench->add_option("--kind", bf.kind, "generator kind");
  bench->add_option("--radius", bf.radius, "radius law (default zero for unit, uniform:0:2 else)");
  bench->add_option("--k", bf.k, "hop budget");
  bench->add_option("--w-factor", bf.w_factor, "weight budget as a multiple of |c_s - c_t|");
  bench->add_option("--params", bf.params, "phase parameter overrides");
  bench->add_option("--output", bf.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*decide) return cmd_decide(dc, r);
    if (*solve) return cmd_solve(sc, sf);
    if (*gen) return cmd_gen(gf);
    if (*bench) return cmd_bench(bf);
  } catch (const InternalFault& e) {
    std::cerr << "diskpath: internal fault: " << e.what() << '\n';
    return kFault;
  } catch (const Infeasible& e) {
    std::cerr << "diskpath: " << e.what() << '\n';
    return kInfeasibleExit;
  } catch (const Error& e) {
    std::cerr << "diskpath: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "diskpath: internal fault: " << e.what() << '\n';
    return kFault;
  }
  return kInputError;
}
