#pragma once

// Instance files, seeded generators and the SVG rendering of a solution.
//
// File format, one record per line, '#' starts a comment:
//   diskpath-instance <n> [variant]
//   <id> <x> <y> [radius]

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "diskpath/critical_scan.hpp"
#include "diskpath/geometry.hpp"
#include "diskpath/nn/weighted_nn.hpp"

namespace diskpath {

struct Instance {
  std::optional<Variant> variant;  // hint from the header, if any
  std::vector<Disk> disks;

  friend bool operator==(const Instance&, const Instance&) = default;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline double parse_real(const std::string& tok, int line) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size() || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  return v;
}

inline long long parse_int(const std::string& tok, int line) {
  long long v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size()) {
    throw InputError("line " + std::to_string(line) + ": bad integer '" + tok + "'");
  }
  return v;
}

inline std::string real_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline Instance parse_instance(std::istream& in) {
  Instance inst;
  std::optional<long long> n;
  std::vector<char> seen;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!n) {
      if (tok[0] != "diskpath-instance" || tok.size() < 2 || tok.size() > 3) {
        throw InputError("line " + std::to_string(lineno) +
                         ": expected header 'diskpath-instance <n> [variant]'");
      }
      n = detail::parse_int(tok[1], lineno);
      if (*n < 1 || *n > 100'000'000) throw InputError("instance size out of range");
      if (tok.size() == 3) {
        inst.variant = parse_variant(tok[2]);
        if (!inst.variant) throw InputError("unknown variant '" + tok[2] + "' in header");
      }
      inst.disks.resize(static_cast<std::size_t>(*n));
      seen.assign(inst.disks.size(), 0);
      continue;
    }
    if (tok.size() != 3 && tok.size() != 4) {
      throw InputError("line " + std::to_string(lineno) + ": expected 'id x y [radius]'");
    }
    const long long id = detail::parse_int(tok[0], lineno);
    if (id < 0 || id >= *n) {
      throw InputError("line " + std::to_string(lineno) + ": id " + tok[0] + " out of range");
    }
    if (seen[id]) throw InputError("line " + std::to_string(lineno) + ": duplicate id " + tok[0]);
    seen[id] = 1;
    Disk& d = inst.disks[id];
    d.id = static_cast<int>(id);
    d.center = Point2{detail::parse_real(tok[1], lineno), detail::parse_real(tok[2], lineno)};
    d.radius = tok.size() == 4 ? detail::parse_real(tok[3], lineno) : 0.0;
    if (d.radius < 0.0) throw InputError("line " + std::to_string(lineno) + ": negative radius");
  }
  if (!n) throw InputError("missing 'diskpath-instance' header");
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InputError("missing record for id " + std::to_string(i));
  }
  return inst;
}

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_instance(in);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  out << "diskpath-instance " << inst.disks.size();
  if (inst.variant) out << ' ' << variant_name(*inst.variant);
  out << '\n';
  for (const Disk& d : inst.disks) {
    out << d.id << ' ' << detail::real_text(d.center.x) << ' ' << detail::real_text(d.center.y);
    if (d.radius != 0.0) out << ' ' << detail::real_text(d.radius);
    out << '\n';
  }
}

inline std::string instance_text(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

// ---------------------------------------------------------------- generators

enum class GenKind { Uniform, Clusters, Line, Annulus };

inline std::optional<GenKind> parse_gen_kind(std::string_view s) {
  if (s == "uniform") return GenKind::Uniform;
  if (s == "clusters") return GenKind::Clusters;
  if (s == "line") return GenKind::Line;
  if (s == "annulus") return GenKind::Annulus;
  return std::nullopt;
}

/// Radius law: "zero", "const:C" or "uniform:A:B".
struct RadiusLaw {
  double lo = 0.0;
  double hi = 0.0;

  static RadiusLaw parse(const std::string& text) {
    auto parts = std::vector<std::string>{};
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    RadiusLaw law;
    if (parts.size() == 1 && parts[0] == "zero") return law;
    if (parts.size() == 2 && parts[0] == "const") {
      law.lo = law.hi = detail::parse_real(parts[1], 0);
    } else if (parts.size() == 3 && parts[0] == "uniform") {
      law.lo = detail::parse_real(parts[1], 0);
      law.hi = detail::parse_real(parts[2], 0);
    } else {
      throw InputError("radius law must be zero, const:C or uniform:A:B");
    }
    if (law.lo < 0.0 || law.hi < law.lo) throw InputError("radius law needs 0 <= A <= B");
    return law;
  }
};

struct GenSpec {
  GenKind kind = GenKind::Uniform;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  RadiusLaw radius;
  double side = 0.0;             // 0: 2*sqrt(n)
  int clusters = 4;
  std::vector<double> spacing{1.0};  // line gaps, repeated cyclically
};

namespace detail {

// Library-independent draws so generated files match across standard libraries.
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal_draw(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit_draw(rng);
  const double u2 = unit_draw(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}

}  // namespace detail

inline Instance generate(const GenSpec& spec) {
  if (spec.n == 0) throw InvalidParameter("generator needs n >= 1");
  std::mt19937_64 rng(spec.seed);
  const double side = spec.side > 0.0 ? spec.side : 2.0 * std::sqrt(static_cast<double>(spec.n));
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * detail::unit_draw(rng); };
  Instance inst;
  inst.disks.resize(spec.n);
  std::vector<Point2> hubs;
  if (spec.kind == GenKind::Clusters) {
    if (spec.clusters <= 0) throw InvalidParameter("clusters generator needs at least one cluster");
    for (int c = 0; c < spec.clusters; ++c) hubs.push_back({draw(0, side), draw(0, side)});
  }
  if (spec.kind == GenKind::Line) {
    if (spec.spacing.empty()) throw InvalidParameter("line generator needs a spacing pattern");
    for (double g : spec.spacing) {
      if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidParameter("line spacing must be >= 0");
    }
  }
  const double sigma = side / (4.0 * std::sqrt(static_cast<double>(std::max(spec.clusters, 1))));
  double x = 0.0;
  for (std::size_t i = 0; i < spec.n; ++i) {
    Point2 p;
    switch (spec.kind) {
      case GenKind::Uniform: p = {draw(0, side), draw(0, side)}; break;
      case GenKind::Clusters: {
        const Point2 h = hubs[rng() % hubs.size()];
        p = {h.x + sigma * detail::normal_draw(rng), h.y + sigma * detail::normal_draw(rng)};
        break;
      }
      case GenKind::Line:
        if (i > 0) x += spec.spacing[(i - 1) % spec.spacing.size()];
        p = {x, 0.0};
        break;
      case GenKind::Annulus: {
        // Area-uniform between radii side/4 and side/2 around the square's center.
        const double ro = side / 2.0;
        const double ri = side / 4.0;
        const double rr = std::sqrt(draw(ri * ri, ro * ro));
        const double th = draw(0.0, 2.0 * std::acos(-1.0));
        p = {ro + rr * std::cos(th), ro + rr * std::sin(th)};
        break;
      }
    }
    const double rad = spec.radius.lo == spec.radius.hi ? spec.radius.lo
                                                        : draw(spec.radius.lo, spec.radius.hi);
    inst.disks[i] = Disk{static_cast<int>(i), p, rad};
  }
  return inst;
}

// ---------------------------------------------------------------- SVG

struct PlotData {
  Variant variant = Variant::DisksUnweighted;
  double param = 0.0;         // optimum (or decision) parameter
  std::vector<int> path;      // vertex ids, empty when none
  std::string caption;
  std::size_t max_edges = 200000;
};

/// Disks drawn as they look at the parameter: unit variants get radius r/2 so
/// that touching circles are exactly the edges, scaling variants their scaled radius.
inline double drawn_radius(const Disk& d, Variant v, double param) {
  switch (v) {
    case Variant::UnitUnweighted:
    case Variant::UnitWeighted: return std::max(0.0, param / 2.0);
    case Variant::AdditiveScale: return std::max(0.0, d.radius + param);
    case Variant::MultiplicativeScale: return std::max(0.0, d.radius * param);
    default: return d.radius;
  }
}

inline std::string render_svg(std::span<const Disk> disks, const PlotData& plot) {
  const std::vector<Disk> eff = effective_disks(disks, plot.variant);
  Box box;
  double rmax = 0.0;
  for (const Disk& d : eff) {
    const double r = drawn_radius(d, plot.variant, plot.param);
    rmax = std::max(rmax, r);
    box.extend({d.center.x - r, d.center.y - r});
    box.extend({d.center.x + r, d.center.y + r});
  }
  const double span = std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-9});
  const double margin = 0.05 * span;
  const double width = box.xmax - box.xmin + 2 * margin;
  const double height = box.ymax - box.ymin + 2 * margin;
  const double caption_h = 0.06 * span;
  const double stroke = span / 600.0;
  // Flip y so the picture has the usual orientation.
  auto X = [&](double x) { return detail::real_text(x - box.xmin + margin); };
  auto Y = [&](double y) { return detail::real_text(box.ymax + margin - y); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << detail::real_text(width)
      << ' ' << detail::real_text(height + caption_h) << "\">\n";
  out << "<style>.disk{fill:#4a90d9;fill-opacity:0.15;stroke:#4a90d9;stroke-width:"
      << detail::real_text(stroke) << "}.edge{stroke:#bbbbbb;stroke-width:"
      << detail::real_text(stroke) << "}.path{stroke:#d0021b;stroke-width:"
      << detail::real_text(4 * stroke) << "}</style>\n";

  std::vector<std::pair<int, int>> edges;
  CriticalScanner scanner(eff, plot.variant);
  scanner.for_each(Interval{-std::numeric_limits<double>::infinity(), plot.param},
                   [&](const CriticalValue& c) {
                     if (edges.size() < plot.max_edges) edges.emplace_back(c.first, c.second);
                   });
  std::sort(edges.begin(), edges.end());
  out << "<g>\n";
  for (auto [a, b] : edges) {
    out << "<line class=\"edge\" x1=\"" << X(eff[a].center.x) << "\" y1=\"" << Y(eff[a].center.y)
        << "\" x2=\"" << X(eff[b].center.x) << "\" y2=\"" << Y(eff[b].center.y) << "\"/>\n";
  }
  out << "</g>\n<g>\n";
  for (const Disk& d : eff) {
    out << "<circle class=\"disk\" cx=\"" << X(d.center.x) << "\" cy=\"" << Y(d.center.y)
        << "\" r=\"" << detail::real_text(drawn_radius(d, plot.variant, plot.param)) << "\"/>\n";
  }
  out << "</g>\n<g>\n";
  for (std::size_t i = 1; i < plot.path.size(); ++i) {
    const Disk& a = eff[plot.path[i - 1]];
    const Disk& b = eff[plot.path[i]];
    out << "<line class=\"path\" x1=\"" << X(a.center.x) << "\" y1=\"" << Y(a.center.y)
        << "\" x2=\"" << X(b.center.x) << "\" y2=\"" << Y(b.center.y) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<text x=\"" << detail::real_text(margin) << "\" y=\""
      << detail::real_text(height + 0.7 * caption_h) << "\" font-size=\""
      << detail::real_text(0.5 * caption_h) << "\" font-family=\"sans-serif\">" << plot.caption
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace diskpath
