#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include "srg/operators.hpp"
#include "srg/signal.hpp"

namespace srg::oracle {

// Side of the full geodesic through a and b: a circle centred on the real
// axis or a vertical line. Positive outside the circle / right of the line;
// magnitude is the Euclidean distance to it.
inline double geodesic_side(cplx a, cplx b, cplx q) {
  if (std::abs(a.real() - b.real()) < 1e-12) return q.real() - a.real();
  const double x0 = (std::norm(b) - std::norm(a)) / (2.0 * (b.real() - a.real()));
  return std::abs(q - x0) - std::abs(a - x0);
}

// Signed membership margin of q in the geodesic triangle abc (>= 0 inside).
inline double triangle_margin(cplx a, cplx b, cplx c, cplx q) {
  double m = INFINITY;
  const cplx tri[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const cplx p = tri[i], r = tri[(i + 1) % 3], opposite = tri[(i + 2) % 3];
    const double ref = geodesic_side(p, r, opposite);
    if (std::abs(ref) < 1e-9) return -INFINITY;  // degenerate triangle
    m = std::min(m, geodesic_side(p, r, q) * (ref > 0 ? 1.0 : -1.0));
  }
  return m;
}

// Brute-force arc closure: the h-convex hull of a finite set is the union of
// the geodesic triangles on its points.
inline double hull_margin(const std::vector<cplx>& pts, cplx q) {
  double best = -INFINITY;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      for (std::size_t c = b + 1; c < pts.size(); ++c) best = std::max(best, triangle_margin(pts[a], pts[b], pts[c], q));
    }
  }
  return best;
}

inline double collinearity(cplx a, cplx b, cplx p) {
  const cplx d = b - a;
  return std::abs(std::imag(std::conj(d) * (p - a))) / std::abs(d);
}

// Distance from z to the mirrored Nyquist curve, sampled densely by direct evaluation.
inline double nyquist_distance(const RationalTF& g, cplx z) {
  const cplx j{0.0, 1.0};
  double best = std::abs(z - g(0.0));
  cplx prev = g(0.0);
  for (int i = 0; i <= 20000; ++i) {
    const double w = std::pow(10.0, -4.0 + 8.0 * i / 20000.0);
    const cplx cur = g(j * w);
    for (const cplx q : {z, std::conj(z)}) {
      const cplx d = cur - prev;
      const double t = std::clamp(std::real((q - prev) * std::conj(d)) / std::norm(d), 0.0, 1.0);
      best = std::min(best, std::abs(q - (prev + t * d)));
    }
    prev = cur;
  }
  return best;
}

}  // namespace srg::oracle
