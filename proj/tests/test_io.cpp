#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "srg/error.hpp"
#include "srg/io.hpp"

using namespace srg;

TEST(ParseTf, Forms) {
  const RationalTF g = parse_tf("[1],[1,1]");
  EXPECT_EQ(g.num(), std::vector<double>{1.0});
  EXPECT_EQ(g.den(), (std::vector<double>{1.0, 1.0}));
  const RationalTF h = parse_tf(" [ 2 , 0.5 ] , [1, 5, 2, 1] ");
  EXPECT_EQ(h.num(), (std::vector<double>{2.0, 0.5}));
  EXPECT_EQ(h.den(), (std::vector<double>{1.0, 5.0, 2.0, 1.0}));
  EXPECT_THROW(parse_tf("[1]"), InvalidArgument);
  EXPECT_THROW(parse_tf("[1],[x]"), InvalidArgument);
  EXPECT_THROW(parse_tf("[1,2,3],[1,1]"), InvalidArgument);
}

TEST(ParseNl, Names) {
  EXPECT_EQ(parse_nl("saturation").kind(), StaticNL::Kind::saturation);
  EXPECT_EQ(parse_nl("sat").kind(), StaticNL::Kind::saturation);
  EXPECT_EQ(parse_nl("deadzone").kind(), StaticNL::Kind::deadzone);
  EXPECT_EQ(parse_nl("relu").kind(), StaticNL::Kind::relu);
  EXPECT_THROW(parse_nl("tanh"), InvalidArgument);
}

TEST(ParseRange, Forms) {
  const LinearRange r = parse_range("-3:3:25");
  EXPECT_EQ(r.lo, -3.0);
  EXPECT_EQ(r.hi, 3.0);
  EXPECT_EQ(r.count, 25u);
  const FrequencyGrid g = parse_frequency_grid("0.01:100:64");
  EXPECT_EQ(g.lo, 0.01);
  EXPECT_EQ(g.hi, 100.0);
  EXPECT_EQ(g.n, 64u);
  EXPECT_THROW(parse_range("1:2"), InvalidArgument);
  EXPECT_THROW(parse_range("a:2:3"), InvalidArgument);
}

TEST(OperatorJson, RoundTrip) {
  const Operator ops[] = {
      Operator(RationalTF({1.0, 0.5}, {1.0, 5.0, 2.0, 1.0})),
      Operator(StaticNL::saturation()),
      Operator(StaticNL::relu()),
      Operator(StaticNL::custom({{-1.0, -1.0}, {0.0, 0.0}, {1.0, 2.0}}, 1.0, 2.0)),
  };
  for (const auto& op : ops) {
    const json j = to_json(op);
    EXPECT_EQ(to_json(operator_from_json(j)), j);
    EXPECT_EQ(to_json(operator_from_json(json::parse(j.dump()))), j);
  }
  EXPECT_EQ(to_json(ops[0])["type"], "tf");
  EXPECT_EQ(to_json(ops[1])["kind"], "saturation");
}

TEST(OperatorJson, Strict) {
  EXPECT_THROW(operator_from_json(json::parse(R"({"type":"tf","num":[1],"den":[1,1],"extra":1})")), InvalidArgument);
  EXPECT_THROW(operator_from_json(json::parse(R"({"type":"nl","kind":"cubic"})")), InvalidArgument);
  EXPECT_THROW(operator_from_json(json::parse(R"({"type":"tf","num":[1]})")), InvalidArgument);
  EXPECT_THROW(operator_from_json(json::parse(R"({"type":"tf","num":"1","den":[1]})")), InvalidArgument);
  EXPECT_THROW(operator_from_json(json::parse(R"([1,2])")), InvalidArgument);
}

TEST(RegionJson, Format) {
  const json d = to_json(Region::disc(0.5, 0.5));
  EXPECT_EQ(d, json::parse(R"({"variant":"disc","c":0.5,"rho":0.5})"));
  const json h = to_json(Region::half_plane(0.0));
  EXPECT_EQ(h["variant"], "halfplane");
  EXPECT_EQ(h["c"], 0.0);
  EXPECT_FALSE(h.contains("infinity"));
}

TEST(RegionJson, RoundTrip) {
  const Region regions[] = {
      Region::disc(0.5, 0.5),
      Region::half_plane(-1.25, HalfPlane::Sense::le),
      Region::disc_complement(0.1, 2.0),
      Region::circle(1.0, 0.3),
      Region::full(),
      Region::empty(),
      Region::cloud(std::vector<cplx>{{1, 2}, {0.1, 0}}),
      Region::hull(h_convex_hull(std::vector<cplx>{{0.2, 0.3}, {1.0, 0.1}, {0.6, 1.2}})),
      moebius_invert(Region::disc(0, 1)),
      Region(Disc{1, 1}, false, true),
      intersect(Region::disc(0, 1), Region::half_plane(0)),
  };
  for (const auto& r : regions) {
    const json j = to_json(r);
    const Region back = region_from_json(json::parse(j.dump()));
    EXPECT_EQ(back, r) << j.dump();
    EXPECT_EQ(to_json(back), j);
  }
}

TEST(RegionJson, Strict) {
  EXPECT_THROW(region_from_json(json::parse(R"({"variant":"disc","c":0.5})")), InvalidArgument);
  EXPECT_THROW(region_from_json(json::parse(R"({"variant":"disc","c":0.5,"rho":-1})")), InvalidArgument);
  EXPECT_THROW(region_from_json(json::parse(R"({"variant":"ellipse"})")), InvalidArgument);
  EXPECT_THROW(region_from_json(json::parse(R"({"variant":"full","c":1})")), InvalidArgument);
}

TEST(ParseRegion, ShortForms) {
  EXPECT_EQ(parse_region("rhp"), Region::half_plane(0));
  EXPECT_EQ(parse_region("lhp"), Region::half_plane(0, HalfPlane::Sense::le));
  EXPECT_EQ(parse_region("full"), Region::full());
  EXPECT_EQ(parse_region("empty"), Region::empty());
  EXPECT_EQ(parse_region("disc:0.5,0.5"), Region::disc(0.5, 0.5));
  EXPECT_EQ(parse_region("halfplane:2"), Region::half_plane(2));
  EXPECT_EQ(parse_region("halfplane:2,le"), Region::half_plane(2, HalfPlane::Sense::le));
  EXPECT_EQ(parse_region("disc_complement:0,1"), Region::disc_complement(0, 1));
  EXPECT_EQ(parse_region("circle:1,2"), Region::circle(1, 2));
  EXPECT_EQ(parse_region(R"({"variant":"disc","c":0.5,"rho":0.5})"), Region::disc(0.5, 0.5));
  EXPECT_THROW(parse_region("disc:1"), InvalidArgument);
  EXPECT_THROW(parse_region("blob"), InvalidArgument);
  EXPECT_THROW(parse_region("{not json"), InvalidArgument);
}

TEST(HullJson, RoundTrip) {
  const HHull h = lti_srg_region(RationalTF({1.0}, {1.0, 1.0}));
  const json j = to_json(h);
  EXPECT_EQ(j["edges"][0]["kind"], "circular");
  EXPECT_NEAR(j["edges"][0]["x0"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["edges"][0]["rho"].get<double>(), 0.5, 1e-12);
  EXPECT_TRUE(j["degenerate"].get<bool>());
  EXPECT_EQ(to_json(hull_from_json(j)), j);
}

namespace {

SrgCloud small_cloud() {
  const auto pairs = biased_sine_pairs({-1, 1, 3}, {0.5, 1.5, 2});
  return sample_static_nl(StaticNL::saturation(), pairs, 5, 256);
}

}  // namespace

TEST(CloudJson, RoundTrip) {
  const SrgCloud c = small_cloud();
  const json j = to_json(c);
  EXPECT_EQ(j["spec"]["harmonics"], 5);
  EXPECT_EQ(j["spec"]["samples"], 256);
  const SrgCloud back = cloud_from_json(json::parse(j.dump()));
  EXPECT_EQ(back, c);

  SrgCloud untruncated = c;
  untruncated.spec.harmonics.reset();
  EXPECT_TRUE(to_json(untruncated)["spec"]["harmonics"].is_null());
  EXPECT_EQ(cloud_from_json(to_json(untruncated)), untruncated);
}

TEST(CloudCsv, Format) {
  const SrgCloud c = small_cloud();
  const std::string csv = cloud_csv(c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "re,im,gain,theta,prov");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
  }
  EXPECT_EQ(rows, c.points.size());
  std::ostringstream out;
  write_cloud_csv(out, c);
  EXPECT_EQ(out.str(), csv);

  // Shortest round-trip formatting.
  std::istringstream again(csv);
  std::getline(again, line);
  std::getline(again, line);
  EXPECT_EQ(std::stod(line.substr(0, line.find(','))), c.points[0].z.real());
}

TEST(CertificateJson, RoundTrip) {
  const SrgCloud c = sample_lti(RationalTF({2.0}, {1.0, 1.0}), {.tones = 8, .multisines = 10});
  const Property props[] = {Property::gain(1.9), Property::positive()};
  const CertificationReport report = certify(c, props);
  const json j = to_json(report);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["combined"]["verdict"], "fail");
  EXPECT_EQ(j["combined"]["violation_count"].get<std::size_t>(), report.combined.violations.size());
  EXPECT_EQ(j["properties"][1]["verdict"], "pass");
  const CertificationReport back = report_from_json(json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back.combined.violations, report.combined.violations);
}
