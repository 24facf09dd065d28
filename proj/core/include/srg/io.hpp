#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "srg/hyperbolic.hpp"
#include "srg/operators.hpp"
#include "srg/regions.hpp"
#include "srg/sampler.hpp"

namespace srg {

using json = nlohmann::json;

// Operators:
//   {"type":"tf","num":[...],"den":[...]}            ascending powers of s
//   {"type":"nl","kind":"saturation"|"deadzone"|"relu"}
//   {"type":"nl","kind":"custom","table":[[x,y],...],"slope_min":m,"slope_max":M}
// Unknown fields are rejected with InvalidArgument.
json to_json(const Operator& op);
Operator operator_from_json(const json& j);

/// "[1],[1,1]" -> 1/(1 + s). Whitespace is ignored.
RationalTF parse_tf(std::string_view text);

/// Named nonlinearity: saturation, deadzone or relu.
StaticNL parse_nl(std::string_view name);

/// "lo:hi:n".
LinearRange parse_range(std::string_view text);
FrequencyGrid parse_frequency_grid(std::string_view text);

json to_json(const HHull& h);
HHull hull_from_json(const json& j);

json to_json(const Region& r);
Region region_from_json(const json& j);

/// Short forms "rhp", "lhp", "full", "empty", "disc:c,rho", "halfplane:c",
/// "halfplane:c,le", "disc_complement:c,rho", "circle:c,rho", or region JSON.
Region parse_region(std::string_view text);

json to_json(const SrgPoint& p);
SrgPoint point_from_json(const json& j);
json to_json(const SrgCloud& c);
SrgCloud cloud_from_json(const json& j);

/// Header `re,im,gain,theta,prov`, one row per point in cloud order.
void write_cloud_csv(std::ostream& out, const SrgCloud& c);
std::string cloud_csv(const SrgCloud& c);

json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);
json to_json(const CertificationReport& r);
CertificationReport report_from_json(const json& j);

}  // namespace srg
