#include "srg/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "srg/error.hpp"

namespace srg {
namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw InvalidArgument(fmt::format("{} must be a JSON object", what));
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument(fmt::format("unknown field '{}' in {}", key, what));
    }
  }
}

const json& field(const json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(fmt::format("missing field '{}' in {}", key, what));
  return *it;
}

double number(const json& j, const char* key, std::string_view what) {
  const auto& v = field(j, key, what);
  if (!v.is_number()) throw InvalidArgument(fmt::format("field '{}' in {} must be a number", key, what));
  return v.get<double>();
}

bool flag(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) throw InvalidArgument(fmt::format("field '{}' must be a boolean", key));
  return it->get<bool>();
}

std::vector<double> numbers(const json& j, const char* key, std::string_view what) {
  const auto& v = field(j, key, what);
  if (!v.is_array()) throw InvalidArgument(fmt::format("field '{}' in {} must be an array", key, what));
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidArgument(fmt::format("field '{}' in {} must hold numbers", key, what));
    out.push_back(x.get<double>());
  }
  return out;
}

json pair_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument("expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cplx> pairs(const json& j, const char* key, std::string_view what) {
  const auto& v = field(j, key, what);
  if (!v.is_array()) throw InvalidArgument(fmt::format("field '{}' in {} must be an array", key, what));
  std::vector<cplx> out;
  for (const auto& p : v) out.push_back(pair_from_json(p));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument(fmt::format("cannot parse '{}' as a number in {}", s, what));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_double(part, what));
  return out;
}

const char* sense_name(HalfPlane::Sense s) { return s == HalfPlane::Sense::ge ? "ge" : "le"; }

HalfPlane::Sense sense_from(std::string_view s) {
  if (s == "ge") return HalfPlane::Sense::ge;
  if (s == "le") return HalfPlane::Sense::le;
  throw InvalidArgument(fmt::format("half-plane sense must be 'ge' or 'le', got '{}'", s));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw InvalidArgument(fmt::format("unknown verdict '{}'", s));
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidArgument(e.what());
  }
}

}  // namespace

json to_json(const Operator& op) {
  if (const auto* g = std::get_if<RationalTF>(&op)) return {{"type", "tf"}, {"num", g->num()}, {"den", g->den()}};
  const auto& phi = std::get<StaticNL>(op);
  json j{{"type", "nl"}, {"kind", phi.name()}};
  if (phi.kind() == StaticNL::Kind::custom) {
    json table = json::array();
    for (const auto& [x, y] : phi.table()) table.push_back({x, y});
    j["table"] = table;
    j["slope_min"] = phi.slope_min();
    j["slope_max"] = phi.slope_max();
  }
  return j;
}

Operator operator_from_json(const json& j) {
  return guarded([&]() -> Operator {
    constexpr std::string_view what = "operator";
    if (!j.is_object()) throw InvalidArgument("operator must be a JSON object");
    const auto& type = field(j, "type", what);
    if (type == "tf") {
      check_keys(j, {"type", "num", "den"}, what);
      return RationalTF(numbers(j, "num", what), numbers(j, "den", what));
    }
    if (type == "nl") {
      const auto kind = field(j, "kind", what).get<std::string>();
      if (kind != "custom") {
        check_keys(j, {"type", "kind"}, what);
        return parse_nl(kind);
      }
      check_keys(j, {"type", "kind", "table", "slope_min", "slope_max"}, what);
      std::vector<std::pair<double, double>> table;
      for (const auto& p : field(j, "table", what)) {
        const cplx xy = pair_from_json(p);
        table.emplace_back(xy.real(), xy.imag());
      }
      return StaticNL::custom(std::move(table), number(j, "slope_min", what), number(j, "slope_max", what));
    }
    throw InvalidArgument(fmt::format("operator type must be 'tf' or 'nl', got {}", type.dump()));
  });
}

RationalTF parse_tf(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const auto close = s.find(']');
  if (s.size() < 5 || s.front() != '[' || close == std::string::npos || close + 2 >= s.size() || s[close + 1] != ',' ||
      s[close + 2] != '[' || s.back() != ']') {
    throw InvalidArgument(fmt::format("transfer function must look like \"[num],[den]\", got \"{}\"", text));
  }
  const std::string_view sv = s;
  const auto num = sv.substr(1, close - 1);
  const auto den = sv.substr(close + 3, sv.size() - close - 4);
  return RationalTF(parse_list(num, "numerator"), parse_list(den, "denominator"));
}

StaticNL parse_nl(std::string_view name) {
  if (name == "saturation" || name == "sat") return StaticNL::saturation();
  if (name == "deadzone") return StaticNL::deadzone();
  if (name == "relu") return StaticNL::relu();
  throw InvalidArgument(fmt::format("unknown nonlinearity '{}' (expected saturation, deadzone or relu)", name));
}

LinearRange parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidArgument(fmt::format("range must be lo:hi:n, got '{}'", text));
  const double lo = parse_double(parts[0], "range");
  const double hi = parse_double(parts[1], "range");
  const double n = parse_double(parts[2], "range");
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) throw InvalidArgument(fmt::format("range count must be a positive integer, got '{}'", parts[2]));
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw InvalidArgument(fmt::format("range needs finite lo <= hi, got '{}'", text));
  if (n == 1.0 && lo != hi) throw InvalidArgument(fmt::format("a one-point range needs lo == hi, got '{}'", text));
  return {lo, hi, static_cast<std::size_t>(n)};
}

FrequencyGrid parse_frequency_grid(std::string_view text) {
  const auto r = parse_range(text);
  if (!(r.lo > 0.0) || !(r.hi > r.lo) || r.count < 2) {
    throw InvalidArgument(fmt::format("frequency grid needs 0 < lo < hi and n >= 2, got '{}'", text));
  }
  return {r.lo, r.hi, r.count};
}

json to_json(const HHull& h) {
  json vertices = json::array();
  for (const auto& v : h.vertices()) vertices.push_back(pair_json(v));
  json klein = json::array();
  for (const auto& w : h.klein()) klein.push_back(pair_json(w));
  json edges = json::array();
  for (const auto& e : h.edges()) {
    switch (e.kind) {
      case GeodesicArc::Kind::circular: edges.push_back({{"kind", "circular"}, {"x0", e.x0}, {"rho", e.rho}}); break;
      case GeodesicArc::Kind::vertical: edges.push_back({{"kind", "vertical"}}); break;
      case GeodesicArc::Kind::point: edges.push_back({{"kind", "point"}}); break;
    }
  }
  return {{"vertices", vertices}, {"edges", edges}, {"klein", klein}, {"degenerate", h.degenerate()}};
}

HHull hull_from_json(const json& j) {
  return guarded([&] {
    check_keys(j, {"vertices", "edges", "klein", "degenerate"}, "hull");
    const auto vertices = pairs(j, "vertices", "hull");
    for (const auto& v : vertices) {
      if (v.imag() < 0.0) throw InvalidArgument("hull vertices must lie in the closed upper half-plane");
    }
    return h_convex_hull(vertices);
  });
}

json to_json(const Region& r) {
  json j = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfPlane>) {
          return {{"variant", "halfplane"}, {"c", v.c}, {"sense", sense_name(v.sense)}};
        } else if constexpr (std::is_same_v<T, Disc>) {
          return {{"variant", "disc"}, {"c", v.c}, {"rho", v.rho}};
        } else if constexpr (std::is_same_v<T, DiscComplement>) {
          return {{"variant", "disc_complement"}, {"c", v.c}, {"rho", v.rho}};
        } else if constexpr (std::is_same_v<T, CircleCurve>) {
          return {{"variant", "circle"}, {"c", v.c}, {"rho", v.rho}};
        } else if constexpr (std::is_same_v<T, HullRegion>) {
          return {{"variant", "hull"}, {"hull", to_json(v.hull)}};
        } else if constexpr (std::is_same_v<T, CloudRegion>) {
          json pts = json::array();
          for (const auto& p : v.points) pts.push_back(pair_json(p));
          return {{"variant", "cloud"}, {"points", pts}};
        } else if constexpr (std::is_same_v<T, FullPlane>) {
          return {{"variant", "full"}};
        } else if constexpr (std::is_same_v<T, Empty>) {
          return {{"variant", "empty"}};
        } else {
          json parts = json::array();
          for (const auto& p : v.parts) parts.push_back(to_json(p));
          return {{"variant", "intersection"}, {"parts", parts}};
        }
      },
      r.shape());
  if (r.includes_infinity()) j["infinity"] = true;
  if (r.approximate()) j["approximate"] = true;
  return j;
}

Region region_from_json(const json& j) {
  return guarded([&]() -> Region {
    constexpr std::string_view what = "region";
    if (!j.is_object()) throw InvalidArgument("region must be a JSON object");
    const auto variant = field(j, "variant", what).get<std::string>();
    const bool inf = flag(j, "infinity");
    const bool approx = flag(j, "approximate");
    auto keys = [&](std::initializer_list<std::string_view> extra) {
      std::vector<std::string_view> allowed{"variant", "infinity", "approximate"};
      allowed.insert(allowed.end(), extra.begin(), extra.end());
      for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
          throw InvalidArgument(fmt::format("unknown field '{}' in {} region", key, variant));
        }
      }
    };
    if (variant == "halfplane") {
      keys({"c", "sense"});
      const auto it = j.find("sense");
      const auto sense = it == j.end() ? HalfPlane::Sense::ge : sense_from(it->get<std::string>());
      return Region(HalfPlane{number(j, "c", what), sense}, inf, approx);
    }
    if (variant == "disc") {
      keys({"c", "rho"});
      return Region(Disc{number(j, "c", what), number(j, "rho", what)}, inf, approx);
    }
    if (variant == "disc_complement") {
      keys({"c", "rho"});
      return Region(DiscComplement{number(j, "c", what), number(j, "rho", what)}, inf, approx);
    }
    if (variant == "circle") {
      keys({"c", "rho"});
      return Region(CircleCurve{number(j, "c", what), number(j, "rho", what)}, inf, approx);
    }
    if (variant == "hull") {
      keys({"hull"});
      return Region(HullRegion{hull_from_json(field(j, "hull", what))}, inf, approx);
    }
    if (variant == "cloud") {
      keys({"points"});
      return Region(CloudRegion{pairs(j, "points", what)}, inf, approx);
    }
    if (variant == "full") {
      keys({});
      return Region(FullPlane{}, inf, approx);
    }
    if (variant == "empty") {
      keys({});
      return Region(Empty{}, inf, approx);
    }
    if (variant == "intersection") {
      keys({"parts"});
      std::vector<Region> parts;
      for (const auto& p : field(j, "parts", what)) parts.push_back(region_from_json(p));
      return Region(Intersection{std::move(parts)}, inf, approx);
    }
    throw InvalidArgument(fmt::format("unknown region variant '{}'", variant));
  });
}

Region parse_region(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    return guarded([&] { return region_from_json(json::parse(text)); });
  }
  if (text == "rhp") return Region::half_plane(0.0, HalfPlane::Sense::ge);
  if (text == "lhp") return Region::half_plane(0.0, HalfPlane::Sense::le);
  if (text == "full") return Region::full();
  if (text == "empty") return Region::empty();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument(fmt::format("cannot parse region '{}'", text));
  const auto name = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (name == "halfplane") {
    const auto parts = split(args, ',');
    if (parts.size() == 1) return Region::half_plane(parse_double(parts[0], "halfplane"));
    if (parts.size() == 2) return Region::half_plane(parse_double(parts[0], "halfplane"), sense_from(trim(parts[1])));
    throw InvalidArgument(fmt::format("halfplane takes c[,ge|le], got '{}'", args));
  }
  const auto v = parse_list(args, name);
  if (v.size() != 2) throw InvalidArgument(fmt::format("{} takes c,rho, got '{}'", name, args));
  if (name == "disc") return Region::disc(v[0], v[1]);
  if (name == "disc_complement") return Region::disc_complement(v[0], v[1]);
  if (name == "circle") return Region::circle(v[0], v[1]);
  throw InvalidArgument(fmt::format("unknown region kind '{}'", name));
}

json to_json(const SrgPoint& p) {
  return {{"re", p.z.real()},
          {"im", p.z.imag()},
          {"gain", p.gain},
          {"theta", p.theta},
          {"prov", {{"family", p.prov.family}, {"params", p.prov.params}, {"seed", p.prov.seed}}}};
}

SrgPoint point_from_json(const json& j) {
  return guarded([&] {
    check_keys(j, {"re", "im", "gain", "theta", "prov"}, "point");
    const auto& prov = field(j, "prov", "point");
    check_keys(prov, {"family", "params", "seed"}, "provenance");
    return SrgPoint{{number(j, "re", "point"), number(j, "im", "point")},
                    number(j, "gain", "point"),
                    number(j, "theta", "point"),
                    {field(prov, "family", "provenance").get<std::string>(), numbers(prov, "params", "provenance"),
                     field(prov, "seed", "provenance").get<std::uint64_t>()}};
  });
}

json to_json(const SrgCloud& c) {
  json points = json::array();
  for (const auto& p : c.points) points.push_back(to_json(p));
  json spec{{"family", c.spec.family}, {"grid", c.spec.grid}, {"samples", c.spec.samples}, {"seed", c.spec.seed}};
  spec["harmonics"] = c.spec.harmonics ? json(*c.spec.harmonics) : json(nullptr);
  return {{"op", c.op}, {"spec", spec}, {"skipped", c.skipped}, {"points", points}};
}

SrgCloud cloud_from_json(const json& j) {
  return guarded([&] {
    check_keys(j, {"op", "spec", "skipped", "points"}, "cloud");
    const auto& spec = field(j, "spec", "cloud");
    check_keys(spec, {"family", "grid", "harmonics", "samples", "seed"}, "sampling spec");
    SrgCloud c;
    c.op = field(j, "op", "cloud").get<std::string>();
    c.spec.family = field(spec, "family", "sampling spec").get<std::string>();
    c.spec.grid = field(spec, "grid", "sampling spec").get<std::string>();
    const auto& h = field(spec, "harmonics", "sampling spec");
    if (!h.is_null()) c.spec.harmonics = h.get<int>();
    c.spec.samples = field(spec, "samples", "sampling spec").get<std::size_t>();
    c.spec.seed = field(spec, "seed", "sampling spec").get<std::uint64_t>();
    c.skipped = field(j, "skipped", "cloud").get<std::size_t>();
    for (const auto& p : field(j, "points", "cloud")) c.points.push_back(point_from_json(p));
    return c;
  });
}

void write_cloud_csv(std::ostream& out, const SrgCloud& c) {
  out << "re,im,gain,theta,prov\n";
  for (const auto& p : c.points) {
    out << fmt::format("{},{},{},{},{}\n", p.z.real(), p.z.imag(), p.gain, p.theta, p.prov.to_string());
  }
}

std::string cloud_csv(const SrgCloud& c) {
  std::ostringstream out;
  write_cloud_csv(out, c);
  return out.str();
}

json to_json(const Certificate& c) {
  json violations = json::array();
  for (const auto& p : c.violations) violations.push_back(to_json(p));
  return {{"property", c.property},
          {"verdict", verdict_name(c.verdict)},
          {"pass", c.verdict == Verdict::pass},
          {"approximate", c.approximate},
          {"violation_count", c.violations.size()},
          {"violations", violations}};
}

Certificate certificate_from_json(const json& j) {
  return guarded([&] {
    constexpr std::string_view what = "certificate";
    check_keys(j, {"property", "verdict", "pass", "approximate", "violation_count", "violations"}, what);
    Certificate c;
    c.property = field(j, "property", what).get<std::string>();
    c.verdict = verdict_from(field(j, "verdict", what).get<std::string>());
    c.approximate = flag(j, "approximate");
    for (const auto& p : field(j, "violations", what)) c.violations.push_back(point_from_json(p));
    return c;
  });
}

json to_json(const CertificationReport& r) {
  json props = json::array();
  for (const auto& c : r.properties) props.push_back(to_json(c));
  return {{"passed", r.passed()}, {"properties", props}, {"combined", to_json(r.combined)}};
}

CertificationReport report_from_json(const json& j) {
  return guarded([&] {
    check_keys(j, {"passed", "properties", "combined"}, "report");
    CertificationReport r;
    for (const auto& c : field(j, "properties", "report")) r.properties.push_back(certificate_from_json(c));
    r.combined = certificate_from_json(field(j, "combined", "report"));
    return r;
  });
}

}  // namespace srg
