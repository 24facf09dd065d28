#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srg/hyperbolic.hpp"
#include "srg/io.hpp"
#include "srg/operators.hpp"
#include "srg/regions.hpp"
#include "srg/sampler.hpp"

namespace srg::cli {

enum class Task { lti_srg, nl_sample, df, check, compose, plot };
enum class View { euclidean, klein };
enum class Compose { none, feedback, sum, intersect, invert };

std::string to_string(Task t);
Task task_from(std::string_view name);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int property_fails = 1;
inline constexpr int usage = 2;
inline constexpr int numerical = 3;
}  // namespace exit_code

struct AnalysisConfig {
  Task task = Task::check;
  std::optional<Operator> system;
  FrequencyGrid freq{};
  LinearRange amp = kDefaultAmplitudeRange;
  LinearRange bias = kDefaultBiasRange;
  int harmonics = kDefaultHarmonics;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = LtiSampleSpec{}.seed;
  std::size_t multisines = LtiSampleSpec{}.multisines;
  std::vector<Property> properties;
  Compose compose = Compose::none;
  /// Compose operands, or extra overlays for plot.
  std::vector<Region> regions;
  std::optional<std::string> svg;
  std::optional<std::string> csv;
  std::optional<std::string> json;
  View view = View::euclidean;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

/// Strict parse; unknown fields are rejected. Missing fields keep their defaults.
AnalysisConfig config_from_json(const srg::json& j, AnalysisConfig base = {});

/// Every field, defaults included. Written as "meta" into JSON outputs.
srg::json to_json(const AnalysisConfig& c);

/// Sample count from SRG_DEFAULT_N, or kDefaultSamples when unset.
std::size_t default_samples();

struct Artifacts {
  struct Points {
    std::string label;
    std::vector<cplx> points;
  };
  struct Area {
    std::string label;
    Region region;
  };
  std::vector<Points> clouds;
  std::vector<Area> regions;
  std::vector<Points> loci;

  bool empty() const noexcept { return clouds.empty() && regions.empty() && loci.empty(); }
};

inline constexpr int kCanvas = 800;

/// Deterministic 800x800 SVG. Throws InvalidArgument on an empty artifact
/// list or an empty cloud.
std::string render_svg(const Artifacts& a, View view);

/// Write to a sibling temporary file, then rename over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

/// Runs a validated config. Writes a summary to `out` and returns an exit code.
int run(const AnalysisConfig& c, std::ostream& out);

/// Full command-line entry point: parsing, dispatch and exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srg::cli
