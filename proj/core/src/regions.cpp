#include "srg/regions.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "srg/error.hpp"

namespace srg {
namespace {

using Sense = HalfPlane::Sense;

constexpr double kChordTol = 1e-6;

double clean(double v) { return v + 0.0; }  // -0.0 -> +0.0

cplx upper(cplx z) { return z.imag() < 0.0 ? std::conj(z) : z; }

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

struct Box {
  double re_lo = -std::numeric_limits<double>::infinity();
  double re_hi = std::numeric_limits<double>::infinity();
  double im_hi = std::numeric_limits<double>::infinity();

  bool bounded() const { return std::isfinite(re_lo) && std::isfinite(re_hi) && std::isfinite(im_hi); }
  Box meet(const Box& o) const {
    return {std::max(re_lo, o.re_lo), std::min(re_hi, o.re_hi), std::min(im_hi, o.im_hi)};
  }
};

std::vector<cplx> hull_boundary(const HHull& h, std::size_t per_edge) {
  std::vector<cplx> out;
  if (h.edges().empty()) return h.vertices();
  for (const auto& e : h.edges()) {
    const auto pts = e.sample(per_edge);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

// Bounding box in the upper half-plane (the region is mirrored below).
Box bounding_box(const Region& r) {
  const auto& s = r.shape();
  if (const auto* d = std::get_if<Disc>(&s)) return {d->c - d->rho, d->c + d->rho, d->rho};
  if (const auto* c = std::get_if<CircleCurve>(&s)) return {c->c - c->rho, c->c + c->rho, c->rho};
  if (std::holds_alternative<Empty>(s)) return {0.0, 0.0, 0.0};
  if (const auto* h = std::get_if<HalfPlane>(&s)) {
    Box b;
    (h->sense == Sense::ge ? b.re_lo : b.re_hi) = h->c;
    return b;
  }
  auto of_points = [](const std::vector<cplx>& pts) {
    Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& p : pts) {
      b.re_lo = std::min(b.re_lo, p.real());
      b.re_hi = std::max(b.re_hi, p.real());
      b.im_hi = std::max(b.im_hi, std::abs(p.imag()));
    }
    return b;
  };
  if (const auto* h = std::get_if<HullRegion>(&s)) return of_points(hull_boundary(h->hull, 64));
  if (const auto* c = std::get_if<CloudRegion>(&s)) return of_points(c->points);
  if (const auto* in = std::get_if<Intersection>(&s)) {
    Box b;
    for (const auto& part : in->parts) b = b.meet(bounding_box(part));
    return b;
  }
  return {};
}

// Circle image under inversion, valid when the circle misses the origin.
std::pair<double, double> invert_circle(double c, double rho) {
  const double q = c * c - rho * rho;
  return {clean(c / q), std::abs(rho / q)};
}

Region invert_point(double c) {
  if (c == 0.0) return Region(Empty{}, true);
  return Region::disc(1.0 / c, 0.0);
}

}  // namespace

Region::Region(Shape shape, bool includes_infinity, bool approximate)
    : shape_(std::move(shape)), includes_infinity_(includes_infinity), approximate_(approximate) {
  std::visit(
      [](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfPlane>) {
          require(std::isfinite(v.c), "half-plane offset must be finite");
          v.c = clean(v.c);
        } else if constexpr (std::is_same_v<T, Disc> || std::is_same_v<T, CircleCurve>) {
          require(std::isfinite(v.c) && std::isfinite(v.rho) && v.rho >= 0.0, "disc/circle needs finite c and rho >= 0");
          v.c = clean(v.c);
          v.rho = clean(v.rho);
        } else if constexpr (std::is_same_v<T, DiscComplement>) {
          require(std::isfinite(v.c) && std::isfinite(v.rho) && v.rho > 0.0, "disc complement needs finite c and rho > 0");
          v.c = clean(v.c);
        } else if constexpr (std::is_same_v<T, CloudRegion>) {
          for (auto& p : v.points) p = upper(p);
        }
      },
      shape_);
}

Region Region::half_plane(double c, Sense sense) { return Region(HalfPlane{c, sense}); }
Region Region::disc(double c, double rho) { return Region(Disc{c, rho}); }
Region Region::disc_complement(double c, double rho) { return Region(DiscComplement{c, rho}); }
Region Region::circle(double c, double rho) { return Region(CircleCurve{c, rho}); }
Region Region::hull(HHull h) { return Region(HullRegion{std::move(h)}); }
Region Region::cloud(std::vector<cplx> points) { return Region(CloudRegion{std::move(points)}); }

Region Region::cloud(const SrgCloud& c) {
  std::vector<cplx> pts;
  pts.reserve(c.points.size());
  for (const auto& p : c.points) pts.push_back(p.z);
  return cloud(std::move(pts));
}

std::string Region::variant_name() const {
  static constexpr const char* names[] = {"halfplane", "disc", "disc_complement", "circle", "hull",
                                          "cloud",     "full", "empty",           "intersection"};
  return names[shape_.index()];
}

bool operator==(const Intersection& a, const Intersection& b) { return a.parts == b.parts; }

bool operator==(const HullRegion& a, const HullRegion& b) {
  return a.hull.vertices() == b.hull.vertices() && a.hull.klein() == b.hull.klein();
}

bool operator==(const Region& a, const Region& b) {
  return a.includes_infinity_ == b.includes_infinity_ && a.approximate_ == b.approximate_ && a.shape_ == b.shape_;
}

Region iqc_region(const IqcSpec& q) {
  const double s = q.b + q.c;
  if (q.a == 0.0 && s == 0.0 && q.d == 0.0) throw InvalidArgument("IQC quadratic form is identically zero");
  if (q.d == 0.0) {
    if (s > 0.0) return Region::half_plane(-q.a / s, Sense::ge);
    if (s < 0.0) return Region::half_plane(-q.a / s, Sense::le);
    return q.a >= 0.0 ? Region::full() : Region::empty();
  }
  // a + s x + d |z|^2 >= 0  <=>  d (|z - c|^2 - r2) >= 0
  const double c = -s / (2.0 * q.d);
  const double r2 = s * s / (4.0 * q.d * q.d) - q.a / q.d;
  if (q.d < 0.0) {
    if (r2 < 0.0) return Region::empty();
    return Region::disc(c, std::sqrt(r2));
  }
  if (r2 <= 0.0) return Region::full();
  return Region::disc_complement(c, std::sqrt(r2));
}

bool contains(const Region& r, cplx z) {
  const auto& s = r.shape();
  if (const auto* h = std::get_if<HalfPlane>(&s)) {
    return h->sense == Sense::ge ? z.real() >= h->c - kRegionTol : z.real() <= h->c + kRegionTol;
  }
  if (const auto* d = std::get_if<Disc>(&s)) return std::abs(z - d->c) <= d->rho + kRegionTol;
  if (const auto* d = std::get_if<DiscComplement>(&s)) return std::abs(z - d->c) >= d->rho - kRegionTol;
  if (const auto* c = std::get_if<CircleCurve>(&s)) return std::abs(std::abs(z - c->c) - c->rho) <= kRegionTol;
  if (const auto* h = std::get_if<HullRegion>(&s)) return h->hull.contains(z);
  if (const auto* c = std::get_if<CloudRegion>(&s)) {
    const cplx u = upper(z);
    return std::any_of(c->points.begin(), c->points.end(), [&](cplx p) { return std::abs(p - u) <= kRegionTol; });
  }
  if (std::holds_alternative<FullPlane>(s)) return true;
  if (std::holds_alternative<Empty>(s)) return false;
  const auto& in = std::get<Intersection>(s);
  return std::all_of(in.parts.begin(), in.parts.end(), [&](const Region& p) { return contains(p, z); });
}

Region moebius_invert(const Region& r) {
  const bool approx = r.approximate();
  const auto& s = r.shape();

  if (const auto* d = std::get_if<Disc>(&s)) {
    if (d->rho == 0.0) return invert_point(d->c);
    const double ac = std::abs(d->c);
    if (ac > d->rho) {
      const auto [c, rho] = invert_circle(d->c, d->rho);
      // A flagged bounded disc would need 0 added to an image that misses it.
      return Region(Disc{c, rho}, false, approx || r.includes_infinity());
    }
    if (ac < d->rho) {
      const auto [c, rho] = invert_circle(d->c, d->rho);
      return Region(DiscComplement{c, rho}, true, approx);
    }
    return Region(HalfPlane{1.0 / (2.0 * d->c), d->c > 0.0 ? Sense::ge : Sense::le}, false, approx);
  }
  if (const auto* d = std::get_if<DiscComplement>(&s)) {
    const double ac = std::abs(d->c);
    if (ac < d->rho) {
      const auto [c, rho] = invert_circle(d->c, d->rho);
      return Region(Disc{c, rho}, false, approx);
    }
    if (ac > d->rho) {
      const auto [c, rho] = invert_circle(d->c, d->rho);
      return Region(DiscComplement{c, rho}, true, approx);
    }
    return Region(HalfPlane{1.0 / (2.0 * d->c), d->c > 0.0 ? Sense::le : Sense::ge}, false, approx);
  }
  if (const auto* h = std::get_if<HalfPlane>(&s)) {
    if (h->c == 0.0) return Region(HalfPlane{0.0, h->sense}, false, approx);
    const double v = 1.0 / (2.0 * h->c);
    const bool origin_inside = (h->sense == Sense::ge) == (h->c < 0.0);
    if (!origin_inside) return Region(Disc{v, std::abs(v)}, false, approx);
    return Region(DiscComplement{v, std::abs(v)}, true, approx);
  }
  if (const auto* c = std::get_if<CircleCurve>(&s)) {
    if (c->rho == 0.0) return invert_point(c->c);
    if (std::abs(c->c) != c->rho) {
      const auto [cc, rho] = invert_circle(c->c, c->rho);
      return Region(CircleCurve{cc, rho}, false, approx);
    }
    const double v = 1.0 / (2.0 * c->c);
    return Region(Intersection{{Region::half_plane(v, Sense::ge), Region::half_plane(v, Sense::le)}}, false, approx);
  }
  if (const auto* h = std::get_if<HullRegion>(&s)) {
    // z -> 1/conj(z) is a hyperbolic isometry (reflection in |z| = 1), so the
    // image of an h-hull is the h-hull of the inverted vertices.
    std::vector<cplx> inv;
    for (const auto& v : h->hull.vertices()) {
      if (v == 0.0) throw Unsupported("hull touches the origin; its inverse is unbounded");
      inv.push_back(1.0 / std::conj(v));
    }
    return Region(HullRegion{h_convex_hull(inv)}, false, approx);
  }
  if (const auto* c = std::get_if<CloudRegion>(&s)) {
    std::vector<cplx> inv;
    bool infinity = false;
    for (const auto& p : c->points) {
      if (p == 0.0) {
        infinity = true;
        continue;
      }
      inv.push_back(1.0 / std::conj(p));
    }
    if (r.includes_infinity()) inv.push_back(0.0);
    return Region(CloudRegion{std::move(inv)}, infinity, approx);
  }
  if (std::holds_alternative<FullPlane>(s)) return Region(FullPlane{}, true, approx);
  if (std::holds_alternative<Empty>(s)) {
    return r.includes_infinity() ? Region(Disc{0.0, 0.0}, false, approx) : Region(Empty{}, false, approx);
  }
  const auto& in = std::get<Intersection>(s);
  std::vector<Region> parts;
  bool all_infinite = true;
  for (const auto& p : in.parts) {
    parts.push_back(moebius_invert(p));
    all_infinite = all_infinite && parts.back().includes_infinity();
  }
  return Region(Intersection{std::move(parts)}, all_infinite, approx);
}

bool chord_property(const Region& r) {
  const auto& s = r.shape();
  if (std::holds_alternative<HalfPlane>(s) || std::holds_alternative<Disc>(s) ||
      std::holds_alternative<DiscComplement>(s) || std::holds_alternative<FullPlane>(s) ||
      std::holds_alternative<Empty>(s)) {
    return true;
  }
  if (const auto* c = std::get_if<CircleCurve>(&s)) return c->rho == 0.0;
  if (const auto* c = std::get_if<CloudRegion>(&s)) {
    return std::all_of(c->points.begin(), c->points.end(), [](cplx p) { return p.imag() <= kChordTol; });
  }
  if (const auto* in = std::get_if<Intersection>(&s)) {
    // Conservative: an intersection of chord-closed sets is chord-closed.
    return std::all_of(in->parts.begin(), in->parts.end(), chord_property);
  }
  const auto& hull = std::get<HullRegion>(s).hull;
  for (const auto& z : hull_boundary(hull, 64)) {
    for (int i = 0; i <= 200; ++i) {
      const cplx q{z.real(), z.imag() * static_cast<double>(i) / 200.0};
      if (!hull.contains(q, kChordTol)) return false;
    }
  }
  return true;
}

std::vector<cplx> sample_region(const Region& r, std::size_t grid, std::size_t boundary) {
  const Box box = bounding_box(r);
  if (!box.bounded()) throw Unsupported(fmt::format("cannot sample the unbounded region '{}'", r.variant_name()));
  std::vector<cplx> out;
  auto add_mirrored = [&](cplx z) {
    out.push_back(z);
    if (z.imag() != 0.0) out.push_back(std::conj(z));
  };
  const auto& s = r.shape();
  if (const auto* c = std::get_if<CloudRegion>(&s)) {
    for (const auto& p : c->points) add_mirrored(p);
    return out;
  }
  if (std::holds_alternative<Empty>(s)) return out;
  if (const auto* c = std::get_if<CircleCurve>(&s)) {
    for (std::size_t i = 0; i < boundary; ++i) {
      add_mirrored(c->c + std::polar(c->rho, std::numbers::pi * static_cast<double>(i) / static_cast<double>(boundary - 1)));
    }
    return out;
  }
  if (const auto* d = std::get_if<Disc>(&s)) {
    for (std::size_t i = 0; i < boundary; ++i) {
      add_mirrored(d->c + std::polar(d->rho, std::numbers::pi * static_cast<double>(i) / static_cast<double>(boundary - 1)));
    }
  } else if (const auto* h = std::get_if<HullRegion>(&s)) {
    const std::size_t per_edge = std::max<std::size_t>(2, boundary / std::max<std::size_t>(1, h->hull.edges().size()));
    for (const auto& z : hull_boundary(h->hull, per_edge)) add_mirrored(z);
  }
  if (box.re_lo > box.re_hi) return out;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const double fx = grid == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(grid - 1);
      const double fy = grid == 1 ? 0.5 : static_cast<double>(j) / static_cast<double>(grid - 1);
      const cplx z{box.re_lo + fx * (box.re_hi - box.re_lo), fy * box.im_hi};
      if (contains(r, z)) add_mirrored(z);
    }
  }
  return out;
}

namespace {

Region sampled_sum(const Region& r1, const Region& r2) {
  const auto a = sample_region(r1);
  const auto b = sample_region(r2);
  std::vector<cplx> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& p : a) {
    for (const auto& q : b) {
      const cplx z = p + q;
      if (z.imag() >= 0.0) sums.push_back(z);
    }
  }
  return Region(CloudRegion{std::move(sums)}, false, true);
}

// Closed forms; nullopt when the pair has none.
std::optional<Region> closed_sum(const Region& r1, const Region& r2) {
  const auto& a = r1.shape();
  const auto& b = r2.shape();

  if (const auto* h1 = std::get_if<HalfPlane>(&a)) {
    const bool ge = h1->sense == Sense::ge;
    if (const auto* h2 = std::get_if<HalfPlane>(&b)) {
      if (h1->sense != h2->sense) return Region::full();
      return Region::half_plane(h1->c + h2->c, h1->sense);
    }
    if (const auto* d = std::get_if<Disc>(&b)) return Region::half_plane(h1->c + d->c + (ge ? -d->rho : d->rho), h1->sense);
    if (const auto* c = std::get_if<CircleCurve>(&b)) {
      return Region::half_plane(h1->c + c->c + (ge ? -c->rho : c->rho), h1->sense);
    }
    if (std::holds_alternative<DiscComplement>(b)) return Region::full();
    // Half-plane plus a set: shift by the set's extreme real part, which for
    // an h-hull is attained at a vertex.
    std::vector<cplx> pts;
    if (const auto* h = std::get_if<HullRegion>(&b)) pts = h->hull.vertices();
    if (const auto* c = std::get_if<CloudRegion>(&b)) pts = c->points;
    if (std::holds_alternative<HullRegion>(b) || std::holds_alternative<CloudRegion>(b)) {
      if (pts.empty()) return Region::empty();
      auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
      return Region::half_plane(h1->c + (ge ? lo->real() : hi->real()), h1->sense);
    }
    return std::nullopt;
  }
  if (const auto* d1 = std::get_if<Disc>(&a)) {
    if (const auto* d2 = std::get_if<Disc>(&b)) return Region::disc(d1->c + d2->c, d1->rho + d2->rho);
    if (const auto* k = std::get_if<DiscComplement>(&b)) {
      if (d1->rho >= k->rho) return Region::full();
      return Region::disc_complement(d1->c + k->c, k->rho - d1->rho);
    }
    if (const auto* c = std::get_if<CircleCurve>(&b)) {
      const double centre = d1->c + c->c;
      if (d1->rho >= c->rho) return Region::disc(centre, d1->rho + c->rho);
      return Region(Intersection{{Region::disc(centre, d1->rho + c->rho), Region::disc_complement(centre, c->rho - d1->rho)}});
    }
    return std::nullopt;
  }
  if (const auto* k1 = std::get_if<DiscComplement>(&a)) {
    if (std::holds_alternative<DiscComplement>(b)) return Region::full();
    if (const auto* c = std::get_if<CircleCurve>(&b)) {
      if (c->rho >= k1->rho) return Region::full();
      return Region::disc_complement(k1->c + c->c, k1->rho - c->rho);
    }
    return std::nullopt;
  }
  if (const auto* c1 = std::get_if<CircleCurve>(&a)) {
    if (const auto* c2 = std::get_if<CircleCurve>(&b)) {
      const double centre = c1->c + c2->c;
      const double inner = std::abs(c1->rho - c2->rho);
      if (inner == 0.0) return Region::disc(centre, c1->rho + c2->rho);
      return Region(Intersection{{Region::disc(centre, c1->rho + c2->rho), Region::disc_complement(centre, inner)}});
    }
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

Region minkowski_sum(const Region& r1, const Region& r2) {
  if (r1.includes_infinity() || r2.includes_infinity()) {
    throw InfinityOperand("Minkowski sum needs both operands free of the point at infinity");
  }
  const bool approx = r1.approximate() || r2.approximate() || !(chord_property(r1) || chord_property(r2));
  auto flagged = [&](Region r) { return Region(r.shape(), false, approx || r.approximate()); };

  if (r1.is<Empty>() || r2.is<Empty>()) return flagged(Region::empty());
  if (r1.is<FullPlane>() || r2.is<FullPlane>()) return flagged(Region::full());

  if (auto r = closed_sum(r1, r2)) return flagged(*r);
  if (auto r = closed_sum(r2, r1)) return flagged(*r);

  auto unbounded = [](const Region& r) { return !bounding_box(r).bounded(); };
  if (unbounded(r1) || unbounded(r2)) {
    throw Unsupported(fmt::format("no representation for the sum of '{}' and '{}'", r1.variant_name(), r2.variant_name()));
  }
  return flagged(sampled_sum(r1, r2));
}

Region intersect(const Region& r1, const Region& r2) {
  const bool approx = r1.approximate() || r2.approximate();
  const bool infinity = r1.includes_infinity() && r2.includes_infinity();
  auto flagged = [&](Region r) { return Region(r.shape(), infinity, approx); };
  constexpr double gap = 2.0 * kRegionTol;

  if (r1.is<Empty>() || r2.is<Empty>()) return flagged(Region::empty());
  if (r1.is<FullPlane>()) return Region(r2.shape(), infinity, approx);
  if (r2.is<FullPlane>()) return Region(r1.shape(), infinity, approx);

  auto filter = [&](const CloudRegion& c, const Region& other) {
    std::vector<cplx> kept;
    for (const auto& p : c.points) {
      if (contains(other, p)) kept.push_back(p);
    }
    return flagged(Region::cloud(std::move(kept)));
  };
  if (const auto* c = r1.as<CloudRegion>()) return filter(*c, r2);
  if (const auto* c = r2.as<CloudRegion>()) return filter(*c, r1);

  auto disc_vs_halfplane = [&](const Disc& d, const HalfPlane& h, const Region& disc_region) -> std::optional<Region> {
    const double near = h.sense == Sense::ge ? d.c - d.rho - h.c : h.c - (d.c + d.rho);
    const double far = h.sense == Sense::ge ? d.c + d.rho - h.c : h.c - (d.c - d.rho);
    if (near >= 0.0) return flagged(disc_region);
    if (far < -gap) return flagged(Region::empty());
    return std::nullopt;
  };

  std::optional<Region> closed;
  if (const auto* h1 = r1.as<HalfPlane>()) {
    if (const auto* h2 = r2.as<HalfPlane>()) {
      if (h1->sense == h2->sense) {
        const double c = h1->sense == Sense::ge ? std::max(h1->c, h2->c) : std::min(h1->c, h2->c);
        closed = flagged(Region::half_plane(c, h1->sense));
      } else {
        const double lo = h1->sense == Sense::ge ? h1->c : h2->c;
        const double hi = h1->sense == Sense::ge ? h2->c : h1->c;
        if (lo > hi + gap) closed = flagged(Region::empty());
      }
    } else if (const auto* d = r2.as<Disc>()) {
      closed = disc_vs_halfplane(*d, *h1, r2);
    }
  } else if (const auto* d1 = r1.as<Disc>()) {
    if (const auto* h = r2.as<HalfPlane>()) {
      closed = disc_vs_halfplane(*d1, *h, r1);
    } else if (const auto* d2 = r2.as<Disc>()) {
      const double dist = std::abs(d1->c - d2->c);
      if (dist > d1->rho + d2->rho + gap) closed = flagged(Region::empty());
      else if (dist + d1->rho <= d2->rho) closed = flagged(r1);
      else if (dist + d2->rho <= d1->rho) closed = flagged(r2);
    } else if (const auto* k = r2.as<DiscComplement>()) {
      const double dist = std::abs(d1->c - k->c);
      if (dist >= d1->rho + k->rho) closed = flagged(r1);
      else if (dist + d1->rho < k->rho - gap) closed = flagged(Region::empty());
    }
  }
  if (closed) return *closed;

  std::vector<Region> parts;
  for (const Region* r : {&r1, &r2}) {
    if (const auto* in = r->as<Intersection>()) {
      parts.insert(parts.end(), in->parts.begin(), in->parts.end());
    } else {
      parts.push_back(Region(r->shape()));
    }
  }
  return Region(Intersection{std::move(parts)}, infinity, approx);
}

Region feedback(const Region& r1, const Region& r2) {
  return moebius_invert(minkowski_sum(moebius_invert(r1), r2));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Certificate cloud_within(const SrgCloud& cloud, const Region& r, std::string property) {
  Certificate cert;
  cert.property = std::move(property);
  cert.approximate = r.approximate();
  for (const auto& p : cloud.points) {
    if (!contains(r, p.z)) cert.violations.push_back(p);
  }
  if (!cert.violations.empty()) {
    cert.verdict = Verdict::fail;
  } else {
    cert.verdict = r.approximate() ? Verdict::inconclusive : Verdict::pass;
  }
  return cert;
}

Region Property::region() const {
  switch (kind) {
    case Kind::gain:
      if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gain bound must be finite and >= 0");
      return iqc_region({gamma * gamma, 0.0, 0.0, -1.0});
    case Kind::positive: return iqc_region({0.0, 1.0, 1.0, 0.0});
    case Kind::iqc: return iqc_region(iqc);
  }
  return Region::full();
}

std::string Property::label() const {
  switch (kind) {
    case Kind::gain: return fmt::format("gain<={}", gamma);
    case Kind::positive: return "positive";
    case Kind::iqc: return fmt::format("iqc({},{},{},{})", iqc.a, iqc.b, iqc.c, iqc.d);
  }
  return "property";
}

CertificationReport certify(const SrgCloud& cloud, std::span<const Property> props) {
  CertificationReport report;
  Region all = Region::full();
  std::string label;
  for (const auto& p : props) {
    const Region r = p.region();
    report.properties.push_back(cloud_within(cloud, r, p.label()));
    all = intersect(all, r);
    label += (label.empty() ? "" : " & ") + p.label();
  }
  report.combined = cloud_within(cloud, all, label.empty() ? "none" : label);
  return report;
}

}  // namespace srg
