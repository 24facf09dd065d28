#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "srg/hyperbolic.hpp"
#include "srg/sampler.hpp"
#include "srg/signal.hpp"

namespace srg {

/// Boundary slack of every analytic membership test.
inline constexpr double kRegionTol = 1e-9;

/// Re z >= c (ge) or Re z <= c (le).
struct HalfPlane {
  enum class Sense { ge, le };
  double c = 0.0;
  Sense sense = Sense::ge;
  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
};

/// |z - c| <= rho.
struct Disc {
  double c = 0.0;
  double rho = 0.0;
  friend bool operator==(const Disc&, const Disc&) = default;
};

/// |z - c| >= rho.
struct DiscComplement {
  double c = 0.0;
  double rho = 1.0;
  friend bool operator==(const DiscComplement&, const DiscComplement&) = default;
};

/// |z - c| = rho.
struct CircleCurve {
  double c = 0.0;
  double rho = 0.0;
  friend bool operator==(const CircleCurve&, const CircleCurve&) = default;
};

struct HullRegion {
  HHull hull;
};

/// Finite point set, stored as upper-half representatives.
struct CloudRegion {
  std::vector<cplx> points;
  friend bool operator==(const CloudRegion&, const CloudRegion&) = default;
};

struct FullPlane {
  friend bool operator==(const FullPlane&, const FullPlane&) = default;
};

struct Empty {
  friend bool operator==(const Empty&, const Empty&) = default;
};

class Region;

/// Intersection of regions with no closed form in the variant set.
struct Intersection {
  std::vector<Region> parts;
};

/// Conjugate-symmetric subset of the extended complex plane.
///
/// Every analytic variant is centred on the real axis, so z is in the region
/// iff conj(z) is. `includes_infinity` marks the point at infinity as a member
/// (it is set when a region with 0 in its interior is inverted).
/// `approximate` marks regions built by sampling; certification never passes
/// against an approximate region.
class Region {
 public:
  using Shape =
      std::variant<HalfPlane, Disc, DiscComplement, CircleCurve, HullRegion, CloudRegion, FullPlane, Empty, Intersection>;

  Region(Shape shape, bool includes_infinity = false, bool approximate = false);

  static Region half_plane(double c, HalfPlane::Sense sense = HalfPlane::Sense::ge);
  static Region disc(double c, double rho);
  static Region disc_complement(double c, double rho);
  static Region circle(double c, double rho);
  static Region hull(HHull h);
  static Region cloud(std::vector<cplx> points);
  static Region cloud(const SrgCloud& c);
  static Region full() { return Region(FullPlane{}); }
  static Region empty() { return Region(Empty{}); }

  const Shape& shape() const noexcept { return shape_; }
  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&shape_);
  }
  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(shape_);
  }

  bool includes_infinity() const noexcept { return includes_infinity_; }
  bool approximate() const noexcept { return approximate_; }

  /// Variant name as used in the JSON format ("disc", "halfplane", ...).
  std::string variant_name() const;

  friend bool operator==(const Region& a, const Region& b);

 private:
  Shape shape_;
  bool includes_infinity_ = false;
  bool approximate_ = false;
};

bool operator==(const Intersection& a, const Intersection& b);
bool operator==(const HullRegion& a, const HullRegion& b);

/// Quadratic form a|du|^2 + (b + c)<du|dy> + d|dy|^2 >= 0 of an incremental IQC.
struct IqcSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

/// {z : a + (b + c) Re z + d |z|^2 >= 0}.
Region iqc_region(const IqcSpec& q);

bool contains(const Region& r, cplx z);

/// Image under z -> 1/conj(z), i.e. r e^{i theta} -> (1/r) e^{i theta}.
Region moebius_invert(const Region& r);

/// Set sum r1 + r2. Throws InfinityOperand if either region contains infinity.
/// When neither operand has the chord property the result is flagged
/// approximate. Combinations without a closed form are sampled.
Region minkowski_sum(const Region& r1, const Region& r2);

Region intersect(const Region& r1, const Region& r2);

/// z in r implies the vertical segment [z, conj z] lies in r.
bool chord_property(const Region& r);

/// Negative feedback of r1 (forward) with r2 (return path): (r1^-1 + r2)^-1.
/// Region algebra only; existence and uniqueness of loop solutions are not checked.
Region feedback(const Region& r1, const Region& r2);

/// Finite sample of a bounded region (boundary plus an interior grid), in the
/// full plane. Throws Unsupported for unbounded regions.
std::vector<cplx> sample_region(const Region& r, std::size_t grid = 21, std::size_t boundary = 128);

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct Certificate {
  std::string property;
  Verdict verdict = Verdict::inconclusive;
  std::vector<SrgPoint> violations;
  bool approximate = false;
};

/// Checks every cloud point against r.
Certificate cloud_within(const SrgCloud& cloud, const Region& r, std::string property = "region");

/// A certifiable incremental property.
struct Property {
  enum class Kind { gain, positive, iqc };
  Kind kind = Kind::positive;
  double gamma = 1.0;
  IqcSpec iqc;

  static Property gain(double gamma) { return {Kind::gain, gamma, {}}; }
  static Property positive() { return {Kind::positive, 0.0, {}}; }
  static Property quadratic(const IqcSpec& q) { return {Kind::iqc, 0.0, q}; }

  Region region() const;
  std::string label() const;
};

struct CertificationReport {
  std::vector<Certificate> properties;
  /// Check against the intersection of all property regions.
  Certificate combined;

  bool passed() const noexcept { return combined.verdict == Verdict::pass; }
};

CertificationReport certify(const SrgCloud& cloud, std::span<const Property> props);

}  // namespace srg
