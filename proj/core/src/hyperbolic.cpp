#include "srg/hyperbolic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "srg/error.hpp"

namespace srg {
namespace {

constexpr cplx kI{0.0, 1.0};

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

cplx upper(cplx z) { return z.imag() < 0.0 ? std::conj(z) : cplx(z.real(), z.imag() + 0.0); }

double upper_angle(cplx v) { return std::atan2(std::max(v.imag(), 0.0), v.real()); }

}  // namespace

cplx bk_map(cplx z) {
  if (z.imag() < 0.0) throw InvalidArgument(fmt::format("Beltrami-Klein map needs Im z >= 0, got {}", z.imag()));
  const cplx g = (z - kI) / (z + kI);
  return 2.0 * g / (1.0 + std::norm(g));
}

cplx bk_inverse(cplx w) {
  const double r2 = std::norm(w);
  if (r2 > 1.0 + 1e-12) throw InvalidArgument(fmt::format("Klein point outside the unit disc (|w| = {})", std::sqrt(r2)));
  // Undo f on the Poincare disc, then the Cayley transform g.
  const cplx zeta = w / (1.0 + std::sqrt(std::max(0.0, 1.0 - r2)));
  const cplx den = 1.0 - zeta;
  if (std::abs(den) < 1e-300) throw InfinityPreimage("w = 1 is the image of the point at infinity");
  const cplx z = kI * (1.0 + zeta) / den;
  return {z.real(), std::max(z.imag(), 0.0)};
}

cplx GeodesicArc::at(double t) const {
  if (t <= 0.0) return from;
  if (t >= 1.0) return to;
  switch (kind) {
    case Kind::point: return from;
    case Kind::vertical: return from + t * (to - from);
    case Kind::circular: {
      const double a = upper_angle(from - x0);
      const double b = upper_angle(to - x0);
      return upper(x0 + std::polar(rho, a + t * (b - a)));
    }
  }
  return from;
}

std::vector<cplx> GeodesicArc::sample(std::size_t n) const {
  if (n < 2) throw InvalidArgument("arc sampling needs at least two points");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

double GeodesicArc::distance(cplx z) const {
  switch (kind) {
    case Kind::point: return std::abs(z - from);
    case Kind::vertical: return segment_distance(z, from, to);
    case Kind::circular: {
      const double a = upper_angle(from - x0);
      const double b = upper_angle(to - x0);
      const double phi = std::atan2(z.imag(), z.real() - x0);
      if (phi >= std::min(a, b) && phi <= std::max(a, b)) return std::abs(std::abs(z - x0) - rho);
      return std::min(std::abs(z - from), std::abs(z - to));
    }
  }
  return 0.0;
}

GeodesicArc arc_min(cplx z1, cplx z2) {
  if (z1.imag() < 0.0 || z2.imag() < 0.0) {
    throw InvalidArgument("geodesic endpoints must lie in the closed upper half-plane");
  }
  GeodesicArc arc;
  arc.from = z1;
  arc.to = z2;
  if (z1 == z2) {
    arc.kind = GeodesicArc::Kind::point;
    return arc;
  }
  if (std::abs(z1.real() - z2.real()) < kVerticalSnap * (1.0 + std::abs(z1) + std::abs(z2))) {
    arc.kind = GeodesicArc::Kind::vertical;
    arc.to = {z1.real(), z2.imag()};
    arc.x0 = z1.real();
    return arc;
  }
  arc.kind = GeodesicArc::Kind::circular;
  arc.x0 = (std::norm(z2) - std::norm(z1)) / (2.0 * (z2.real() - z1.real()));
  arc.rho = std::abs(z1 - arc.x0);
  return arc;
}

HHull h_convex_hull(std::span<const cplx> points) {
  if (points.empty()) throw InvalidArgument("h-convex hull of an empty set");

  struct KleinPoint {
    cplx w;
    std::size_t source;
  };
  std::vector<KleinPoint> pts;
  pts.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].imag() < 0.0) throw InvalidArgument("h-convex hull points must have Im >= 0");
    pts.push_back({bk_map(points[i]), i});
  }
  std::sort(pts.begin(), pts.end(), [](const KleinPoint& a, const KleinPoint& b) {
    return a.w.real() != b.w.real() ? a.w.real() < b.w.real() : a.w.imag() < b.w.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const KleinPoint& a, const KleinPoint& b) { return a.w == b.w; }),
            pts.end());

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<KleinPoint> chain;
  if (pts.size() > 1) {
    chain.reserve(2 * pts.size());
    auto turn = [&](const KleinPoint& p) {
      return cross(chain[chain.size() - 1].w - chain[chain.size() - 2].w, p.w - chain[chain.size() - 2].w);
    };
    for (const auto& p : pts) {
      while (chain.size() >= 2 && turn(p) <= 0.0) chain.pop_back();
      chain.push_back(p);
    }
    const std::size_t lower = chain.size();
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
      while (chain.size() > lower && turn(pts[i]) <= 0.0) chain.pop_back();
      chain.push_back(pts[i]);
    }
    chain.pop_back();
  } else {
    chain = pts;
  }

  // A polygon thinner than the membership slack is treated as its spanning
  // segment: its interior is numerically empty.
  const KleinPoint first = pts.front();
  const KleinPoint last = pts.back();
  if (chain.size() > 2) {
    double width = 0.0;
    for (const auto& p : chain) width = std::max(width, segment_distance(p.w, first.w, last.w));
    if (width < kHullTol) chain = {first, last};
  }

  HHull hull;
  for (const auto& p : chain) {
    hull.klein_.push_back(p.w);
    hull.vertices_.push_back(points[p.source]);
  }
  const std::size_t m = hull.vertices_.size();
  if (m == 2) {
    hull.edges_.push_back(arc_min(hull.vertices_[0], hull.vertices_[1]));
  } else if (m > 2) {
    for (std::size_t i = 0; i < m; ++i) hull.edges_.push_back(arc_min(hull.vertices_[i], hull.vertices_[(i + 1) % m]));
  }
  return hull;
}

bool HHull::contains(cplx z, double tol) const {
  const cplx w = bk_map(upper(z));
  if (klein_.size() == 1) return std::abs(w - klein_[0]) <= tol;
  if (klein_.size() == 2) return segment_distance(w, klein_[0], klein_[1]) <= tol;
  const std::size_t n = klein_.size();
  auto outside = [&](std::size_t i) {
    const cplx a = klein_[i];
    const cplx b = klein_[(i + 1) % n];
    return cross(b - a, w - a) < -tol * std::abs(b - a);
  };
  if (outside(0) || outside(n - 1)) return false;
  // Fan from vertex 0: find the wedge [k_lo, k_lo+1] holding w, then test the
  // edges around it.
  const cplx p0 = klein_[0];
  std::size_t lo = 1, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (cross(klein_[mid] - p0, w - p0) >= 0.0) lo = mid;
    else hi = mid;
  }
  for (std::size_t i = lo - 1; i <= std::min(lo + 1, n - 1); ++i) {
    if (outside(i)) return false;
  }
  return true;
}

std::vector<cplx> nyquist_locus(const RationalTF& g, const FrequencyGrid& grid) {
  if (!(grid.lo > 0.0) || !(grid.hi >= grid.lo) || !std::isfinite(grid.hi) || grid.n == 0) {
    throw InvalidArgument(fmt::format("frequency grid {}:{}:{} is invalid", grid.lo, grid.hi, grid.n));
  }
  if (const auto pole = imaginary_axis_pole(g)) throw PoleOnAxis(*pole);
  std::vector<cplx> out;
  out.reserve(grid.n + 2);
  auto push = [&](cplx z) {
    z = upper(z);
    if (out.empty() || out.back() != z) out.push_back(z);
  };
  push(tf_eval(g, 0.0));
  const double log_lo = std::log(grid.lo);
  const double log_hi = std::log(grid.hi);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double t = grid.n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(grid.n - 1);
    push(tf_eval(g, std::exp(log_lo + t * (log_hi - log_lo))));
  }
  push(g.high_frequency_gain());
  return out;
}

HHull lti_srg_region(const RationalTF& g, const FrequencyGrid& grid) {
  nyquist_locus(g, grid);  // validates the grid and rejects axis poles

  constexpr int kMaxDepth = 30;
  constexpr std::size_t kMaxPoints = 4'000'000;

  std::vector<cplx> pts;
  // Each segment is parameterized by p in [p0, p1]; eval(p) is the upper-half
  // locus point there.
  auto refine = [&](auto&& self, const std::function<cplx(double)>& eval, double p0, double p1, cplx z0, cplx z1,
                    int depth) -> void {
    const double pm = 0.5 * (p0 + p1);
    const cplx zm = eval(pm);
    const cplx w0 = bk_map(z0);
    const cplx w1 = bk_map(z1);
    const cplx wm = bk_map(zm);
    const bool flat = segment_distance(wm, w0, w1) <= kLocusTol;
    if (flat || depth >= kMaxDepth || pts.size() >= kMaxPoints) {
      // Flat at the midpoint; still keep it so refined samples bracket it.
      pts.push_back(zm);
      return;
    }
    self(self, eval, p0, pm, z0, zm, depth + 1);
    pts.push_back(zm);
    self(self, eval, pm, p1, zm, z1, depth + 1);
  };
  auto run = [&](const std::function<cplx(double)>& eval, double p0, double p1) {
    const cplx z0 = eval(p0);
    const cplx z1 = eval(p1);
    pts.push_back(z0);
    refine(refine, eval, p0, p1, z0, z1, 0);
    pts.push_back(z1);
  };

  auto at_omega = [&](double omega) { return upper(tf_eval(g, omega)); };
  // [0, lo], linear in omega.
  run(at_omega, 0.0, grid.lo);
  // The log grid, one refinement per interval.
  const double log_lo = std::log(grid.lo);
  const double log_hi = std::log(grid.hi);
  auto at_log = [&](double p) { return at_omega(std::exp(p)); };
  for (std::size_t i = 0; i + 1 < grid.n; ++i) {
    const double p0 = log_lo + (log_hi - log_lo) * static_cast<double>(i) / static_cast<double>(grid.n - 1);
    const double p1 = log_lo + (log_hi - log_lo) * static_cast<double>(i + 1) / static_cast<double>(grid.n - 1);
    run(at_log, p0, p1);
  }
  // [hi, infinity), linear in 1/omega.
  auto at_inverse = [&](double p) { return p == 0.0 ? upper(g.high_frequency_gain()) : at_omega(1.0 / p); };
  run(at_inverse, 0.0, 1.0 / grid.hi);

  return h_convex_hull(pts);
}

}  // namespace srg
