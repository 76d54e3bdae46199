#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "support.hpp"

namespace diskpath {
namespace {

Instance parse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(InstanceFile, ParsesCommentsAndOptionalRadius) {
  const Instance inst = parse(
      "# a comment\n"
      "diskpath-instance 3 disks-gaps  # trailing\n"
      "\n"
      "2 5 5 0.5\n"
      "0 0 0\n"
      "1 1.5 -2 1\n");
  ASSERT_EQ(inst.disks.size(), 3u);
  EXPECT_EQ(inst.variant, Variant::DisksWeightedGaps);
  EXPECT_EQ(inst.disks[0].radius, 0.0);
  EXPECT_EQ(inst.disks[1].center.y, -2.0);
  EXPECT_EQ(inst.disks[2].radius, 0.5);
}

TEST(InstanceFile, RejectsMalformedInput) {
  EXPECT_THROW(parse(""), InputError);
  EXPECT_THROW(parse("0 0 0\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 2\n0 0 0\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 2\n0 0 0\n0 1 1\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 2\n0 0 0\n1 x 1\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 1\n0 0 0 -1\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 1\n0 inf 0\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 1\n3 0 0\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 1 bogus\n0 0 0\n"), InputError);
  EXPECT_THROW(parse("diskpath-instance 1\n0 0 0 1 2\n"), InputError);
}

TEST(InstanceFile, RoundTripIsExact) {
  for (auto kind : {GenKind::Uniform, GenKind::Clusters, GenKind::Annulus, GenKind::Line}) {
    GenSpec spec;
    spec.kind = kind;
    spec.n = 200;
    spec.seed = 5;
    spec.radius = RadiusLaw::parse("uniform:0:2");
    spec.spacing = {0.1, 0.7};
    Instance inst = generate(spec);
    inst.variant = Variant::DisksUnweighted;
    EXPECT_EQ(parse(instance_text(inst)), inst);
  }
}

TEST(Generators, LinePatternGivesTheCanonicalInstance) {
  GenSpec spec;
  spec.kind = GenKind::Line;
  spec.n = 4;
  spec.spacing = {1, 2, 3};
  const Instance inst = generate(spec);
  EXPECT_EQ(inst.disks, testing::line4());
}

TEST(Generators, DeterministicBySeed) {
  GenSpec spec;
  spec.n = 100;
  spec.seed = 7;
  EXPECT_EQ(instance_text(generate(spec)), instance_text(generate(spec)));
  GenSpec other = spec;
  other.seed = 8;
  EXPECT_NE(instance_text(generate(spec)), instance_text(generate(other)));
}

TEST(Generators, Errors) {
  GenSpec spec;
  spec.kind = GenKind::Clusters;
  spec.n = 10;
  spec.clusters = 0;
  EXPECT_THROW(generate(spec), InvalidParameter);
  spec.n = 0;
  spec.clusters = 2;
  EXPECT_THROW(generate(spec), InvalidParameter);
  EXPECT_THROW(RadiusLaw::parse("uniform:2:1"), InputError);
  EXPECT_THROW(RadiusLaw::parse("gauss"), InputError);
  EXPECT_FALSE(parse_gen_kind("spiral"));
}

TEST(Generators, AnnulusStaysInTheRing) {
  GenSpec spec;
  spec.kind = GenKind::Annulus;
  spec.n = 500;
  spec.side = 20;
  for (const Disk& d : generate(spec).disks) {
    const double r = distance(d.center, Point2{10, 10});
    EXPECT_GE(r, 5.0 - 1e-9);
    EXPECT_LE(r, 10.0 + 1e-9);
  }
}

TEST(Svg, LineInstanceStructure) {
  auto p = testing::line4();
  const SolveResult r = solve(p, Variant::UnitUnweighted, 0, 3, Budget::hops(3));
  PlotData plot;
  plot.variant = Variant::UnitUnweighted;
  plot.param = r.answer.value;
  plot.path = r.path.path;
  plot.caption = "r_star = 3";
  const std::string svg = render_svg(p, plot);
  EXPECT_EQ(count(svg, "<circle"), 4u);
  EXPECT_EQ(count(svg, "class=\"path\""), 2u);
  EXPECT_EQ(count(svg, "class=\"edge\""), 4u);  // 01, 12, 02, 23 at r = 3
  EXPECT_NE(svg.find("r_star = 3"), std::string::npos);
  EXPECT_EQ(svg, render_svg(p, plot));
}

}  // namespace
}  // namespace diskpath
