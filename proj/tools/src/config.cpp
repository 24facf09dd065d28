#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "cli.hpp"
#include "srg/error.hpp"

namespace srg::cli {
namespace {

constexpr std::pair<Task, std::string_view> kTasks[] = {
    {Task::lti_srg, "lti-srg"}, {Task::nl_sample, "nl-sample"}, {Task::df, "df"},
    {Task::check, "check"},     {Task::compose, "compose"},     {Task::plot, "plot"},
};

constexpr std::pair<Compose, std::string_view> kCompose[] = {
    {Compose::none, "none"},           {Compose::feedback, "feedback"}, {Compose::sum, "sum"},
    {Compose::intersect, "intersect"}, {Compose::invert, "invert"},
};

std::string_view compose_name(Compose c) {
  for (const auto& [k, name] : kCompose) {
    if (k == c) return name;
  }
  return "none";
}

std::string range_text(double lo, double hi, std::size_t n) { return fmt::format("{}:{}:{}", lo, hi, n); }

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

template <typename T>
T integer(const json& v, const char* key) {
  if (!v.is_number_integer()) throw InvalidArgument(fmt::format("config field '{}' must be an integer", key));
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
      throw InvalidArgument(fmt::format("config field '{}' is out of range", key));
    }
    return static_cast<T>(u);
  }
  const auto s = v.get<std::int64_t>();
  if constexpr (std::is_unsigned_v<T>) {
    if (s < 0) throw InvalidArgument(fmt::format("config field '{}' must be non-negative", key));
  }
  if (s > static_cast<std::int64_t>(std::numeric_limits<T>::max()) ||
      s < static_cast<std::int64_t>(std::numeric_limits<T>::min())) {
    throw InvalidArgument(fmt::format("config field '{}' is out of range", key));
  }
  return static_cast<T>(s);
}

std::string text(const json& v, const char* key) {
  if (!v.is_string()) throw InvalidArgument(fmt::format("config field '{}' must be a string", key));
  return v.get<std::string>();
}

Property property_from_json(const json& p) {
  if (!p.is_object() || p.size() != 1) {
    throw InvalidArgument("each property must be one of {\"gain\":g}, {\"positive\":true}, {\"iqc\":[a,b,c,d]}");
  }
  const auto it = p.begin();
  const std::string& key = it.key();
  const json& v = it.value();
  if (key == "gain") {
    if (!v.is_number()) throw InvalidArgument("property 'gain' must be a number");
    return Property::gain(v.get<double>());
  }
  if (key == "positive") {
    if (v != true) throw InvalidArgument("property 'positive' must be true");
    return Property::positive();
  }
  if (key == "iqc") {
    if (!v.is_array() || v.size() != 4) throw InvalidArgument("property 'iqc' must be [a,b,c,d]");
    for (const auto& x : v) {
      if (!x.is_number()) throw InvalidArgument("property 'iqc' must hold numbers");
    }
    return Property::quadratic({v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()});
  }
  throw InvalidArgument(fmt::format("unknown property '{}'", key));
}

json property_json(const Property& p) {
  switch (p.kind) {
    case Property::Kind::gain: return {{"gain", p.gamma}};
    case Property::Kind::positive: return {{"positive", true}};
    case Property::Kind::iqc: return {{"iqc", {p.iqc.a, p.iqc.b, p.iqc.c, p.iqc.d}}};
  }
  return nullptr;
}

}  // namespace

std::string to_string(Task t) {
  for (const auto& [k, name] : kTasks) {
    if (k == t) return std::string(name);
  }
  return "check";
}

Task task_from(std::string_view name) {
  for (const auto& [k, n] : kTasks) {
    if (n == name) return k;
  }
  throw InvalidArgument(fmt::format("unknown task '{}'", name));
}

std::size_t default_samples() {
  const char* env = std::getenv("SRG_DEFAULT_N");
  if (env == nullptr || *env == '\0') return kDefaultSamples;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(env, &end, 10);
  if (*end != '\0' || !power_of_two(n) || n < 8 || n > (1ull << 24)) {
    throw InvalidArgument(fmt::format("SRG_DEFAULT_N must be a power of two between 8 and 2^24, got '{}'", env));
  }
  return static_cast<std::size_t>(n);
}

void AnalysisConfig::validate() const {
  if (!power_of_two(samples) || samples < 8 || samples > (std::size_t{1} << 24)) {
    throw InvalidArgument(fmt::format("samples must be a power of two between 8 and 2^24, got {}", samples));
  }
  if (harmonics < 1) throw InvalidArgument(fmt::format("harmonics must be >= 1, got {}", harmonics));
  if (2 * static_cast<std::size_t>(harmonics) >= samples) {
    throw InvalidArgument(fmt::format("harmonics {} needs more than {} samples", harmonics, samples));
  }
  if (multisines < 1) throw InvalidArgument("multisines must be >= 1");
  if (!(freq.lo > 0.0) || !(freq.hi > freq.lo) || !std::isfinite(freq.hi) || freq.n < 2) {
    throw InvalidArgument("grid-freq needs 0 < lo < hi and n >= 2");
  }
  auto check_range = [](const LinearRange& r, const char* name) {
    if (r.count < 1 || !std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi || (r.count == 1 && r.lo != r.hi)) {
      throw InvalidArgument(fmt::format("{} needs finite lo <= hi and n >= 1", name));
    }
  };
  check_range(amp, "grid-amp");
  check_range(bias, "grid-bias");
  if (!(amp.lo > 0.0)) throw InvalidArgument("grid-amp needs lo > 0");
  for (const auto& p : properties) (void)p.region();

  const bool tf = system && std::holds_alternative<RationalTF>(*system);
  const bool nl = system && std::holds_alternative<StaticNL>(*system);
  switch (task) {
    case Task::lti_srg:
      if (!tf) throw InvalidArgument("lti-srg needs a transfer function (--tf or a tf system)");
      break;
    case Task::nl_sample:
    case Task::df:
      if (!nl) throw InvalidArgument(fmt::format("{} needs a static nonlinearity (--nl or an nl system)", to_string(task)));
      break;
    case Task::check:
      if (!system) throw InvalidArgument("check needs a system (--tf, --nl or --system)");
      if (properties.empty()) throw InvalidArgument("check needs at least one property (--gain, --positive, --iqc)");
      break;
    case Task::compose: {
      if (compose == Compose::none) throw InvalidArgument("compose needs --feedback, --sum, --intersect or --invert");
      const std::size_t need = compose == Compose::invert ? 1 : 2;
      if (regions.size() != need) {
        throw InvalidArgument(fmt::format("{} takes {} regions, got {}", compose_name(compose), need, regions.size()));
      }
      break;
    }
    case Task::plot:
      if (!svg) throw InvalidArgument("plot needs --svg");
      if (!system && regions.empty()) throw InvalidArgument("plot needs a system or at least one --region");
      break;
  }
}

AnalysisConfig config_from_json(const json& j, AnalysisConfig c) {
  try {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "task") {
        c.task = task_from(text(v, "task"));
      } else if (key == "system") {
        if (v.is_null()) c.system.reset();
        else c.system = operator_from_json(v);
      } else if (key == "grid_freq") {
        c.freq = parse_frequency_grid(text(v, "grid_freq"));
      } else if (key == "grid_amp") {
        c.amp = parse_range(text(v, "grid_amp"));
      } else if (key == "grid_bias") {
        c.bias = parse_range(text(v, "grid_bias"));
      } else if (key == "harmonics") {
        c.harmonics = integer<int>(v, "harmonics");
      } else if (key == "samples") {
        c.samples = integer<std::size_t>(v, "samples");
      } else if (key == "seed") {
        c.seed = integer<std::uint64_t>(v, "seed");
      } else if (key == "multisines") {
        c.multisines = integer<std::size_t>(v, "multisines");
      } else if (key == "properties") {
        if (!v.is_array()) throw InvalidArgument("config field 'properties' must be an array");
        c.properties.clear();
        for (const auto& p : v) c.properties.push_back(property_from_json(p));
      } else if (key == "compose") {
        const auto name = text(v, "compose");
        bool found = false;
        for (const auto& [k, n] : kCompose) {
          if (n == name) {
            c.compose = k;
            found = true;
          }
        }
        if (!found) throw InvalidArgument(fmt::format("unknown compose operation '{}'", name));
      } else if (key == "regions") {
        if (!v.is_array()) throw InvalidArgument("config field 'regions' must be an array");
        c.regions.clear();
        for (const auto& r : v) c.regions.push_back(r.is_string() ? parse_region(r.get<std::string>()) : region_from_json(r));
      } else if (key == "output") {
        if (!v.is_object()) throw InvalidArgument("config field 'output' must be an object");
        for (const auto& [fmt_name, path] : v.items()) {
          if (fmt_name == "svg") c.svg = text(path, "output.svg");
          else if (fmt_name == "csv") c.csv = text(path, "output.csv");
          else if (fmt_name == "json") c.json = text(path, "output.json");
          else throw InvalidArgument(fmt::format("unknown output format '{}'", fmt_name));
        }
      } else if (key == "view") {
        const auto view = text(v, "view");
        if (view == "euclidean") c.view = View::euclidean;
        else if (view == "klein") c.view = View::klein;
        else throw InvalidArgument(fmt::format("view must be euclidean or klein, got '{}'", view));
      } else {
        throw InvalidArgument(fmt::format("unknown config field '{}'", key));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(e.what());
  }
  return c;
}

json to_json(const AnalysisConfig& c) {
  json props = json::array();
  for (const auto& p : c.properties) props.push_back(property_json(p));
  json regions = json::array();
  for (const auto& r : c.regions) regions.push_back(srg::to_json(r));
  json output = json::object();
  if (c.svg) output["svg"] = *c.svg;
  if (c.csv) output["csv"] = *c.csv;
  if (c.json) output["json"] = *c.json;
  return {{"task", to_string(c.task)},
          {"system", c.system ? srg::to_json(*c.system) : json(nullptr)},
          {"grid_freq", range_text(c.freq.lo, c.freq.hi, c.freq.n)},
          {"grid_amp", range_text(c.amp.lo, c.amp.hi, c.amp.count)},
          {"grid_bias", range_text(c.bias.lo, c.bias.hi, c.bias.count)},
          {"harmonics", c.harmonics},
          {"samples", c.samples},
          {"seed", c.seed},
          {"multisines", c.multisines},
          {"properties", props},
          {"compose", compose_name(c.compose)},
          {"regions", regions},
          {"output", output},
          {"view", c.view == View::klein ? "klein" : "euclidean"}};
}

}  // namespace srg::cli
