#include <fmt/format.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "cli.hpp"
#include "srg/error.hpp"

namespace srg::cli {
namespace {

struct Outputs {
  std::optional<std::string> json;
  std::optional<std::string> csv;
  std::optional<Artifacts> svg;
};

void write_outputs(const AnalysisConfig& c, const Outputs& o) {
  // Render first so that a failing plot leaves no partial set of files.
  std::optional<std::string> svg;
  if (c.svg && o.svg) svg = render_svg(*o.svg, c.view);
  if (c.json && o.json) write_atomic(*c.json, *o.json);
  if (c.csv && o.csv) write_atomic(*c.csv, *o.csv);
  if (svg) write_atomic(*c.svg, *svg);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<cplx> zs(const SrgCloud& cloud) {
  std::vector<cplx> out;
  out.reserve(cloud.points.size());
  for (const auto& p : cloud.points) out.push_back(p.z);
  return out;
}

LtiSampleSpec lti_spec(const AnalysisConfig& c) {
  LtiSampleSpec s;
  s.omega_lo = c.freq.lo;
  s.omega_hi = c.freq.hi;
  s.multisines = c.multisines;
  s.samples = c.samples;
  s.seed = c.seed;
  return s;
}

SrgCloud sample_system(const AnalysisConfig& c) {
  if (const auto* g = std::get_if<RationalTF>(&*c.system)) return sample_lti(*g, lti_spec(c));
  const auto grid = biased_sine_pairs(c.bias, c.amp);
  return sample_static_nl(std::get<StaticNL>(*c.system), grid, c.harmonics, c.samples);
}

void overlay_regions(const AnalysisConfig& c, Artifacts& a) {
  for (const auto& p : c.properties) a.regions.push_back({p.label(), p.region()});
  for (std::size_t i = 0; i < c.regions.size(); ++i) {
    a.regions.push_back({fmt::format("region {}", i + 1), c.regions[i]});
  }
}

std::string pt(cplx z) { return fmt::format("{}{:+}j", z.real(), z.imag()); }

int lti_srg(const AnalysisConfig& c, std::ostream& out) {
  const auto& g = std::get<RationalTF>(*c.system);
  const HHull hull = lti_srg_region(g, c.freq);
  const auto locus = nyquist_locus(g, c.freq);
  Outputs o;
  json nyq = json::array();
  for (const auto& z : locus) nyq.push_back({z.real(), z.imag()});
  o.json = dump({{"meta", to_json(c)}, {"hull", srg::to_json(hull)}, {"degenerate", hull.degenerate()}, {"nyquist", nyq}});
  if (c.csv) o.csv = cloud_csv(sample_lti(g, lti_spec(c)));
  Artifacts a;
  a.regions.push_back({"SRG (h-convex hull)", Region::hull(hull)});
  overlay_regions(c, a);
  a.loci.push_back({"Nyquist locus", locus});
  o.svg = std::move(a);
  write_outputs(c, o);
  out << fmt::format("lti-srg: {} hull vertices, degenerate={}\n", hull.vertices().size(), hull.degenerate());
  return exit_code::ok;
}

int nl_sample(const AnalysisConfig& c, std::ostream& out) {
  const SrgCloud cloud = sample_system(c);
  Outputs o;
  if (c.json) o.json = dump({{"meta", to_json(c)}, {"cloud", srg::to_json(cloud)}});
  if (c.csv) o.csv = cloud_csv(cloud);
  Artifacts a;
  overlay_regions(c, a);
  a.clouds.push_back({"SRG samples", zs(cloud)});
  o.svg = std::move(a);
  write_outputs(c, o);
  out << fmt::format("nl-sample: {} points, {} pairs skipped\n", cloud.points.size(), cloud.skipped);
  return exit_code::ok;
}

int df(const AnalysisConfig& c, std::ostream& out) {
  const auto& phi = std::get<StaticNL>(*c.system);
  const DescribingFn psi(phi);
  json table = json::array();
  for (double a : c.amp.values()) {
    const cplx v = psi(a);
    table.push_back({{"a", a}, {"re", v.real()}, {"im", v.imag()}});
  }
  const auto pairs = amplitude_pairs(c.amp);
  const SrgCloud cloud = sample_df(phi, pairs);
  Outputs o;
  o.json = dump({{"meta", to_json(c)}, {"describing_function", table}, {"cloud", srg::to_json(cloud)}});
  if (c.csv) o.csv = cloud_csv(cloud);
  Artifacts a;
  overlay_regions(c, a);
  if (!cloud.points.empty()) a.clouds.push_back({"describing-function SRG", zs(cloud)});
  o.svg = std::move(a);
  write_outputs(c, o);
  out << fmt::format("df: {} amplitudes, {} points, {} pairs skipped\n", table.size(), cloud.points.size(), cloud.skipped);
  return exit_code::ok;
}

int check(const AnalysisConfig& c, std::ostream& out) {
  const SrgCloud cloud = sample_system(c);
  const auto report = certify(cloud, c.properties);
  Outputs o;
  o.json = dump({{"meta", to_json(c)}, {"report", srg::to_json(report)}});
  if (c.csv) o.csv = cloud_csv(cloud);
  Artifacts a;
  overlay_regions(c, a);
  a.clouds.push_back({"SRG samples", zs(cloud)});
  o.svg = std::move(a);
  write_outputs(c, o);
  auto line = [&](const Certificate& cert) {
    out << fmt::format("{}: {}", cert.property, to_string(cert.verdict));
    if (!cert.violations.empty()) {
      const auto& v = cert.violations.front();
      out << fmt::format(" ({} violations; counterexample z={} from {})", cert.violations.size(), pt(v.z), v.prov.to_string());
    }
    if (cert.approximate) out << " [approximate region]";
    out << "\n";
  };
  for (const auto& cert : report.properties) line(cert);
  out << "combined ";
  line(report.combined);
  return report.passed() ? exit_code::ok : exit_code::property_fails;
}

int compose(const AnalysisConfig& c, std::ostream& out) {
  const auto& r = c.regions;
  const Region result = [&] {
    switch (c.compose) {
      case Compose::feedback: return feedback(r[0], r[1]);
      case Compose::sum: return minkowski_sum(r[0], r[1]);
      case Compose::intersect: return intersect(r[0], r[1]);
      case Compose::invert: return moebius_invert(r[0]);
      case Compose::none: break;
    }
    throw InvalidArgument("compose needs an operation");
  }();
  Outputs o;
  o.json = dump({{"meta", to_json(c)}, {"region", srg::to_json(result)}});
  Artifacts a;
  for (std::size_t i = 0; i < r.size(); ++i) a.regions.push_back({fmt::format("operand {}", i + 1), r[i]});
  a.regions.push_back({"result", result});
  o.svg = std::move(a);
  write_outputs(c, o);
  out << "region " << srg::to_json(result).dump() << "\n";
  return exit_code::ok;
}

int plot(const AnalysisConfig& c, std::ostream& out) {
  Artifacts a;
  if (c.system) {
    if (const auto* g = std::get_if<RationalTF>(&*c.system)) {
      a.regions.push_back({"SRG (h-convex hull)", Region::hull(lti_srg_region(*g, c.freq))});
      a.loci.push_back({"Nyquist locus", nyquist_locus(*g, c.freq)});
    } else {
      a.clouds.push_back({"SRG samples", zs(sample_system(c))});
    }
  }
  overlay_regions(c, a);
  Outputs o;
  o.svg = std::move(a);
  write_outputs(c, o);
  out << fmt::format("plot: wrote {}\n", *c.svg);
  return exit_code::ok;
}

}  // namespace

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += fmt::format(".tmp-{}", ::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.close();
    if (!f) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidArgument(fmt::format("cannot write '{}'", path.string()));
  }
}

int run(const AnalysisConfig& c, std::ostream& out) {
  c.validate();
  switch (c.task) {
    case Task::lti_srg: return lti_srg(c, out);
    case Task::nl_sample: return nl_sample(c, out);
    case Task::df: return df(c, out);
    case Task::check: return check(c, out);
    case Task::compose: return compose(c, out);
    case Task::plot: return plot(c, out);
  }
  return exit_code::usage;
}

namespace {

constexpr const char* kFooter = R"(Transfer functions use ascending coefficients: --tf "[1],[1,1]" is 1/(1+s).
Regions: rhp, lhp, full, empty, disc:c,rho, halfplane:c[,ge|le],
disc_complement:c,rho, circle:c,rho, or region JSON.
SRG_DEFAULT_N sets the default sample count N (default 4096).
Exit codes: 0 ok, 1 property fails or is inconclusive, 2 usage or config error,
3 numerical error (pole on the imaginary axis, point at infinity, ...).)";

struct Flags {
  std::string tf, nl, system, config, grid_freq, grid_amp, grid_bias, invert, svg, csv, json, view;
  int harmonics = 0;
  std::size_t samples = 0, multisines = 0;
  std::uint64_t seed = 0;
  double gain = 0.0;
  bool positive = false;
  std::vector<std::string> iqc, feedback, sum, intersect, regions;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument(fmt::format("cannot read '{}'", path));
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json parse_json_arg(const std::string& text) {
  try {
    const auto t = text.find_first_not_of(" \t\n");
    return json::parse(t != std::string::npos && text[t] == '{' ? text : read_file(text));
  } catch (const json::exception& e) {
    throw InvalidArgument(e.what());
  }
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scaled relative graphs of LTI systems and static nonlinearities.", "srg"};
  app.footer(kFooter);
  app.require_subcommand(1, 1);
  Flags f;
  auto* o_tf = app.add_option("--tf", f.tf, "transfer function \"[num],[den]\"");
  auto* o_nl = app.add_option("--nl", f.nl, "saturation | deadzone | relu");
  auto* o_system = app.add_option("--system", f.system, "operator JSON, inline or a file path");
  auto* o_config = app.add_option("--config", f.config, "AnalysisConfig JSON file");
  auto* o_freq = app.add_option("--grid-freq", f.grid_freq, "frequency grid lo:hi:n (log-spaced)");
  auto* o_amp = app.add_option("--grid-amp", f.grid_amp, "amplitude grid lo:hi:n");
  auto* o_bias = app.add_option("--grid-bias", f.grid_bias, "bias grid lo:hi:n");
  auto* o_h = app.add_option("--harmonics", f.harmonics, "harmonic cap H");
  auto* o_n = app.add_option("--samples", f.samples, "samples per period N (power of two)");
  auto* o_seed = app.add_option("--seed", f.seed, "random seed");
  auto* o_ms = app.add_option("--multisines", f.multisines, "random multisines for LTI sampling");
  auto* o_gain = app.add_option("--gain", f.gain, "certify incremental gain <= G");
  app.add_flag("--positive", f.positive, "certify incremental positivity");
  app.add_option("--iqc", f.iqc, "certify the IQC a,b,c,d");
  app.add_option("--feedback", f.feedback, "negative feedback of regions R1 (forward) and R2")->expected(2);
  app.add_option("--sum", f.sum, "Minkowski sum of two regions")->expected(2);
  app.add_option("--intersect", f.intersect, "intersection of two regions")->expected(2);
  auto* o_invert = app.add_option("--invert", f.invert, "Moebius inversion of a region");
  app.add_option("--region", f.regions, "region overlay (repeatable)");
  auto* o_svg = app.add_option("--svg", f.svg, "SVG output path");
  auto* o_csv = app.add_option("--csv", f.csv, "CSV output path");
  auto* o_json = app.add_option("--json", f.json, "JSON output path");
  auto* o_view = app.add_option("--view", f.view, "euclidean | klein")->check(CLI::IsMember({"euclidean", "klein"}));

  const std::pair<const char*, const char*> subcommands[] = {
      {"lti-srg", "SRG hull of an LTI system from its Nyquist locus"},
      {"nl-sample", "sampled SRG of a static nonlinearity over biased sines"},
      {"df", "describing function and its SRG points"},
      {"check", "certify gain, positivity or IQC properties"},
      {"compose", "region algebra: feedback, sum, intersection, inversion"},
      {"plot", "render region overlays to SVG"},
  };
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::usage;
  }

  try {
    AnalysisConfig c;
    c.samples = default_samples();
    const Task task = task_from(app.get_subcommands().front()->get_name());
    if (o_config->count() > 0) {
      const json j = parse_json_arg(f.config);
      if (j.is_object() && j.contains("task") && j["task"] != to_string(task)) {
        throw InvalidArgument(fmt::format("config task {} does not match '{}'", j["task"].dump(), to_string(task)));
      }
      c = config_from_json(j, c);
    }
    c.task = task;
    if (o_tf->count() + o_nl->count() + o_system->count() > 1) {
      throw InvalidArgument("give only one of --tf, --nl and --system");
    }
    if (o_tf->count() > 0) c.system = parse_tf(f.tf);
    if (o_nl->count() > 0) c.system = parse_nl(f.nl);
    if (o_system->count() > 0) c.system = operator_from_json(parse_json_arg(f.system));
    if (o_freq->count() > 0) c.freq = parse_frequency_grid(f.grid_freq);
    if (o_amp->count() > 0) c.amp = parse_range(f.grid_amp);
    if (o_bias->count() > 0) c.bias = parse_range(f.grid_bias);
    if (o_h->count() > 0) c.harmonics = f.harmonics;
    if (o_n->count() > 0) c.samples = f.samples;
    if (o_seed->count() > 0) c.seed = f.seed;
    if (o_ms->count() > 0) c.multisines = f.multisines;
    if (o_gain->count() > 0) c.properties.push_back(Property::gain(f.gain));
    if (f.positive) c.properties.push_back(Property::positive());
    for (const auto& q : f.iqc) {
      const json v = json::parse("[" + q + "]", nullptr, false);
      if (v.is_discarded() || v.size() != 4) throw InvalidArgument(fmt::format("--iqc takes a,b,c,d, got '{}'", q));
      c.properties.push_back(Property::quadratic({v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()}));
    }
    const int ops = (f.feedback.empty() ? 0 : 1) + (f.sum.empty() ? 0 : 1) + (f.intersect.empty() ? 0 : 1) +
                    (o_invert->count() > 0 ? 1 : 0);
    if (ops > 1) throw InvalidArgument("give only one of --feedback, --sum, --intersect and --invert");
    auto operands = [&](Compose op, const std::vector<std::string>& args) {
      c.compose = op;
      c.regions.clear();
      for (const auto& r : args) c.regions.push_back(parse_region(r));
    };
    if (!f.feedback.empty()) operands(Compose::feedback, f.feedback);
    if (!f.sum.empty()) operands(Compose::sum, f.sum);
    if (!f.intersect.empty()) operands(Compose::intersect, f.intersect);
    if (o_invert->count() > 0) operands(Compose::invert, {f.invert});
    for (const auto& r : f.regions) c.regions.push_back(parse_region(r));
    if (o_svg->count() > 0) c.svg = f.svg;
    if (o_csv->count() > 0) c.csv = f.csv;
    if (o_json->count() > 0) c.json = f.json;
    if (o_view->count() > 0) c.view = f.view == "klein" ? View::klein : View::euclidean;
    return run(c, out);
  } catch (const InvalidArgument& e) {
    err << "srg: error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const json::exception& e) {
    err << "srg: error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "srg: numerical error: " << e.what() << "\n";
    return exit_code::numerical;
  }
}

}  // namespace srg::cli
