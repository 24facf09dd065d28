#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "srg/error.hpp"

using namespace srg;
using namespace srg::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "srg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("srg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::vector<cplx> points_attr(const std::string& svg, const std::string& element) {
  const std::regex re("<" + element + " points=\"([^\"]*)\"");
  std::smatch m;
  std::vector<cplx> out;
  if (!std::regex_search(svg, m, re)) return out;
  std::istringstream in(m[1].str());
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    out.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
  }
  return out;
}

}  // namespace

TEST(Config, DefaultsAndRoundTrip) {
  AnalysisConfig c;
  c.system = Operator(StaticNL::saturation());
  c.properties = {Property::gain(1.0), Property::positive(), Property::quadratic({0, 1, 1, -2})};
  EXPECT_NO_THROW(c.validate());
  const json j = to_json(c);
  EXPECT_EQ(j["samples"], 4096);
  EXPECT_EQ(j["harmonics"], 10);
  EXPECT_EQ(to_json(config_from_json(json::parse(j.dump()))), j);
}

TEST(Config, RejectsUnknownAndInvalid) {
  EXPECT_THROW(config_from_json(json::parse(R"({"task":"check","colour":"red"})")), InvalidArgument);
  EXPECT_THROW(config_from_json(json::parse(R"({"task":"fly"})")), InvalidArgument);
  EXPECT_THROW(config_from_json(json::parse(R"({"samples":-4})")), InvalidArgument);

  AnalysisConfig c;
  c.task = Task::nl_sample;
  c.system = Operator(StaticNL::saturation());
  c.samples = 1000;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.samples = 16;
  EXPECT_THROW(c.validate(), InvalidArgument);  // 2H >= N
  c.samples = 4096;
  c.amp = {2.0, 1.0, 5};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.amp = kDefaultAmplitudeRange;
  c.freq = {10.0, 1.0, 5};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.freq = {};
  EXPECT_NO_THROW(c.validate());
  c.task = Task::lti_srg;
  EXPECT_THROW(c.validate(), InvalidArgument);  // needs a transfer function
}

TEST(Config, EnvironmentSampleCount) {
  ::setenv("SRG_DEFAULT_N", "1024", 1);
  EXPECT_EQ(default_samples(), 1024u);
  ::setenv("SRG_DEFAULT_N", "1000", 1);
  EXPECT_THROW(default_samples(), InvalidArgument);
  ::unsetenv("SRG_DEFAULT_N");
  EXPECT_EQ(default_samples(), kDefaultSamples);
}

TEST(Svg, DeterministicAndNonEmpty) {
  Artifacts a;
  a.regions.push_back({"disc", Region::disc(0.5, 0.5)});
  a.clouds.push_back({"pts", {{0.2, 0.1}, {0.5, 0.4}}});
  a.loci.push_back({"locus", {{1, 0}, {0.5, 0.5}, {0, 0}}});
  for (View v : {View::euclidean, View::klein}) {
    const std::string s = render_svg(a, v);
    EXPECT_EQ(s, render_svg(a, v));
    EXPECT_NE(s.find("width=\"800\" height=\"800\""), std::string::npos);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
  }
  EXPECT_THROW(render_svg(Artifacts{}, View::euclidean), InvalidArgument);
  Artifacts empty_cloud;
  empty_cloud.clouds.push_back({"none", {}});
  EXPECT_THROW(render_svg(empty_cloud, View::euclidean), InvalidArgument);
}

TEST(Svg, LagKleinViewIsChord) {
  const RationalTF lag({1.0}, {1.0, 1.0});
  const FrequencyGrid grid{1e-2, 1e2, 64};
  Artifacts a;
  a.regions.push_back({"hull", Region::hull(lti_srg_region(lag, grid))});
  a.loci.push_back({"nyquist", nyquist_locus(lag, grid)});
  const std::string s = render_svg(a, View::klein);
  const auto chord = points_attr(s, "polygon");
  ASSERT_EQ(chord.size(), 2u);
  const auto locus = points_attr(s, "polyline");
  ASSERT_GT(locus.size(), 10u);
  const cplx d = chord[1] - chord[0];
  for (const auto& p : locus) {
    const double off = std::abs((std::conj(d) * (p - chord[0])).imag()) / std::abs(d);
    EXPECT_LT(off, 0.05) << p;  // rounding to 0.01 px
  }
}

TEST(Svg, SaturationCloudInsideDisc) {
  const auto pairs = biased_sine_pairs(kDefaultBiasRange, kDefaultAmplitudeRange);
  const SrgCloud cloud = sample_static_nl(StaticNL::saturation(), pairs);
  Artifacts a;
  a.regions.push_back({"disc", Region::disc(0.5, 0.5)});
  std::vector<cplx> zs;
  for (const auto& p : cloud.points) {
    zs.push_back(p.z);
    EXPECT_LE(std::abs(p.z - 0.5), 0.5 + 1e-3);
  }
  a.clouds.push_back({"sat", zs});
  const std::string s = render_svg(a, View::euclidean);
  EXPECT_NE(s.find("<circle"), std::string::npos);
}

TEST_F(TempDir, WriteAtomic) {
  write_atomic(path("a.txt"), "hello");
  write_atomic(path("a.txt"), "world");
  EXPECT_EQ(slurp(path("a.txt")), "world");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir_)) ++files;
  EXPECT_EQ(files, 1u);
}

TEST_F(TempDir, LtiSrgOutputs) {
  const auto r = run_cli({"lti-srg", "--tf", "[1],[1,1]", "--svg", path("o.svg"), "--json", path("o.json")});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const json j = json::parse(slurp(path("o.json")));
  EXPECT_TRUE(j["degenerate"].get<bool>());
  EXPECT_EQ(j["hull"]["edges"][0]["kind"], "circular");
  EXPECT_NEAR(j["hull"]["edges"][0]["x0"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["hull"]["edges"][0]["rho"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(to_json(hull_from_json(j["hull"])), j["hull"]);
  EXPECT_EQ(j["meta"]["samples"], 4096);
  EXPECT_EQ(config_from_json(j["meta"]).task, Task::lti_srg);
  EXPECT_NE(slurp(path("o.svg")).find("Nyquist locus"), std::string::npos);
}

TEST_F(TempDir, CheckExitCodes) {
  const auto sat = run_cli({"check", "--nl", "saturation", "--gain", "1", "--positive", "--json", path("r.json")});
  EXPECT_EQ(sat.code, exit_code::ok) << sat.err;
  const CertificationReport rep = report_from_json(json::parse(slurp(path("r.json")))["report"]);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.properties.size(), 2u);

  const auto lag = run_cli({"check", "--tf", "[2],[1,1]", "--gain", "1.9"});
  EXPECT_EQ(lag.code, exit_code::property_fails);
  EXPECT_NE(lag.out.find("counterexample"), std::string::npos) << lag.out;
  EXPECT_NE(lag.out.find("dc"), std::string::npos);

  EXPECT_EQ(run_cli({"check", "--nl", "saturation"}).code, exit_code::usage);
  EXPECT_EQ(run_cli({"check", "--nl", "tanh", "--positive"}).code, exit_code::usage);
  EXPECT_EQ(run_cli({"check", "--bogus"}).code, exit_code::usage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, exit_code::usage);
  EXPECT_EQ(run_cli({"check", "--tf", "[1],[0,1]", "--gain", "1"}).code, exit_code::numerical);
  const auto pole = run_cli({"lti-srg", "--tf", "[1],[4,0,1]"});
  EXPECT_EQ(pole.code, exit_code::numerical);
  EXPECT_NE(pole.err.find("2"), std::string::npos) << pole.err;
}

TEST(Cli, ComposeFeedback) {
  const auto r = run_cli({"compose", "--feedback", "rhp", "rhp"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const auto pos = r.out.find('{');
  ASSERT_NE(pos, std::string::npos);
  const json j = json::parse(r.out.substr(pos));
  EXPECT_EQ(region_from_json(j), Region::half_plane(0));
  const auto inv = run_cli({"compose", "--invert", "disc:0.5,0.5"});
  EXPECT_EQ(region_from_json(json::parse(inv.out.substr(inv.out.find('{')))), Region::half_plane(1));
}

TEST_F(TempDir, EmptyCloudWritesNoFile) {
  const auto r = run_cli({"df", "--nl", "saturation", "--grid-amp", "1:1:1", "--svg", path("df.svg")});
  EXPECT_EQ(r.code, exit_code::usage);
  EXPECT_FALSE(fs::exists(path("df.svg")));
}

TEST_F(TempDir, ConfigFileAndFlags) {
  {
    std::ofstream f(path("cfg.json"));
    f << R"({"task":"nl-sample","system":{"type":"nl","kind":"saturation"},"grid_amp":"0.5:2:4","grid_bias":"-1:1:3","samples":256,"harmonics":5})";
  }
  const auto r = run_cli({"nl-sample", "--config", path("cfg.json"), "--samples", "512", "--json", path("c.json")});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const json j = json::parse(slurp(path("c.json")));
  EXPECT_EQ(j["meta"]["samples"], 512);
  EXPECT_EQ(j["meta"]["harmonics"], 5);
  EXPECT_EQ(cloud_from_json(j["cloud"]).spec.samples, 512u);

  EXPECT_EQ(run_cli({"check", "--config", path("cfg.json"), "--positive"}).code, exit_code::usage);
  {
    std::ofstream f(path("bad.json"));
    f << R"({"task":"nl-sample","sytem":{}})";
  }
  EXPECT_EQ(run_cli({"nl-sample", "--config", path("bad.json")}).code, exit_code::usage);
}
