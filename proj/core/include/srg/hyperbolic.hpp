#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "srg/operators.hpp"
#include "srg/signal.hpp"

namespace srg {

/// Beltrami-Klein map f(g(z)) of the closed upper half-plane onto the closed
/// unit disc, with g(z) = (z - i)/(z + i) and f(z) = 2z/(1 + |z|^2).
/// Geodesics of the half-plane become straight chords.
cplx bk_map(cplx z);

/// Inverse of bk_map. Unit-circle points map to the real axis; w = 1 is the
/// image of infinity and throws InfinityPreimage.
cplx bk_inverse(cplx w);

/// Minimal geodesic between two points of the closed upper half-plane: an arc
/// of a circle centred on the real axis, a vertical segment, or a point.
struct GeodesicArc {
  enum class Kind { point, circular, vertical };

  Kind kind = Kind::point;
  cplx from;
  cplx to;
  /// Circle centre on the real axis and radius (circular arcs only).
  double x0 = 0.0;
  double rho = 0.0;

  /// Point at parameter t in [0, 1]; angle-linear on circular arcs.
  cplx at(double t) const;
  /// n >= 2 points from `from` to `to` inclusive.
  std::vector<cplx> sample(std::size_t n) const;
  /// Euclidean distance from z to the arc.
  double distance(cplx z) const;
};

/// Real parts closer than this (relative to 1 + |z1| + |z2|) snap to a
/// vertical geodesic.
inline constexpr double kVerticalSnap = 1e-10;

GeodesicArc arc_min(cplx z1, cplx z2);

/// Membership slack of hull tests, measured in Klein coordinates.
inline constexpr double kHullTol = 1e-9;

/// Hyperbolic-convex hull of a finite point set.
///
/// Stored as the Klein-disc convex polygon (counter-clockwise, starting from
/// the lexicographically smallest Klein point), the matching half-plane
/// vertices, and the closing geodesic edges. A hull whose Klein image is a
/// single point or a segment is degenerate: it has no interior.
class HHull {
 public:
  const std::vector<cplx>& vertices() const noexcept { return vertices_; }
  const std::vector<GeodesicArc>& edges() const noexcept { return edges_; }
  const std::vector<cplx>& klein() const noexcept { return klein_; }

  bool degenerate() const noexcept { return klein_.size() <= 2; }

  /// Boundary-inclusive membership. Lower-half queries are mirrored first.
  bool contains(cplx z, double tol = kHullTol) const;

  friend HHull h_convex_hull(std::span<const cplx> points);

 private:
  std::vector<cplx> vertices_;
  std::vector<GeodesicArc> edges_;
  std::vector<cplx> klein_;
};

/// Smallest h-convex set containing `points` (all with Im >= 0). Computed as
/// the Euclidean hull of the Klein images.
HHull h_convex_hull(std::span<const cplx> points);

inline bool hull_contains(const HHull& h, cplx z, double tol = kHullTol) { return h.contains(z, tol); }

/// Log-spaced frequency grid [lo, hi] with n points.
struct FrequencyGrid {
  double lo = 1e-3;
  double hi = 1e3;
  std::size_t n = 2048;
};

/// Upper-half representatives of G(j omega) for omega = 0, the log grid, and
/// omega -> infinity, in order of increasing omega. Repeated consecutive
/// points are collapsed, so G = const gives a single point.
std::vector<cplx> nyquist_locus(const RationalTF& g, const FrequencyGrid& grid = {});

/// Exact SRG region of an LTI operator: the h-convex hull of its upper-half
/// Nyquist locus. The locus is refined adaptively beyond `grid` until every
/// sub-interval's Klein image is straight to within kLocusTol, so points on
/// the curved boundary pass the default membership test.
inline constexpr double kLocusTol = 0.5 * kHullTol;

HHull lti_srg_region(const RationalTF& g, const FrequencyGrid& grid = {});

}  // namespace srg
