#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <set>

#include "cli.hpp"
#include "srg/error.hpp"

namespace srg::cli {
namespace {

constexpr double kMargin = 48.0;
constexpr double kPlot = kCanvas - 2.0 * kMargin;
constexpr int kRasterCell = 4;
constexpr int kCloudCell = 3;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * kPlot; }
  double py(double y) const { return kCanvas - kMargin - (y - y0) / (y1 - y0) * kPlot; }
  double scale() const { return kPlot / (x1 - x0); }
  double data_x(double px) const { return x0 + (px - kMargin) / kPlot * (x1 - x0); }
  double data_y(double py) const { return y0 + (kCanvas - kMargin - py) / kPlot * (y1 - y0); }
};

std::string num(double v) {
  const double r = std::round(v * 100.0) / 100.0;
  return fmt::format("{:.2f}", r + 0.0);
}

cplx upper(cplx z) { return z.imag() < 0.0 ? std::conj(z) : z; }

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double im = 0.0;
  void add(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
    im = std::max(im, std::abs(z.imag()));
  }
};

std::vector<cplx> hull_path(const HHull& h) {
  if (h.edges().empty()) return h.vertices();
  std::vector<cplx> out;
  for (const auto& e : h.edges()) {
    // About one sample per 1/64 of a half-turn of arc.
    std::size_t n = 2;
    if (e.kind == GeodesicArc::Kind::circular) {
      const double span = std::abs(std::arg(e.to - e.x0) - std::arg(e.from - e.x0));
      n = 2 + static_cast<std::size_t>(std::min(62.0, std::ceil(span / (std::numbers::pi / 64.0))));
    }
    const auto pts = e.sample(n);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

void add_region(Extent& e, const Region& r) {
  const auto& s = r.shape();
  auto round_shape = [&](double c, double rho) {
    e.add(c - rho);
    e.add(c + rho);
    e.add({c, rho});
  };
  if (const auto* h = std::get_if<HalfPlane>(&s)) e.add(h->c);
  else if (const auto* d = std::get_if<Disc>(&s)) round_shape(d->c, d->rho);
  else if (const auto* k = std::get_if<DiscComplement>(&s)) round_shape(k->c, k->rho);
  else if (const auto* c = std::get_if<CircleCurve>(&s)) round_shape(c->c, c->rho);
  else if (const auto* hr = std::get_if<HullRegion>(&s)) {
    for (const auto& z : hull_path(hr->hull)) e.add(z);
  } else if (const auto* cl = std::get_if<CloudRegion>(&s)) {
    for (const auto& z : cl->points) e.add(z);
  } else if (const auto* in = std::get_if<Intersection>(&s)) {
    for (const auto& p : in->parts) add_region(e, p);
  }
}

std::string nice_label(double v) { return fmt::format("{:g}", std::abs(v) < 1e-12 ? 0.0 : v); }

double nice_step(double span) {
  const double raw = span / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

class Canvas {
 public:
  Canvas(const Frame& frame, View view) : f_(frame), view_(view) {
    emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n", kCanvas);
    emit("<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", kCanvas);
    emit("<defs><clipPath id=\"plot\"><rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\"/></clipPath></defs>\n",
         num(kMargin), num(kPlot));
  }

  template <typename... Args>
  void emit(fmt::format_string<Args...> f, Args&&... args) {
    fmt::format_to(std::back_inserter(out_), f, std::forward<Args>(args)...);
  }

  const Frame& frame() const { return f_; }
  View view() const { return view_; }

  std::string point(cplx z) const { return num(f_.px(z.real())) + "," + num(f_.py(z.imag())); }

  // Points closer than half a pixel to the last one kept are dropped; the
  // final point always stays.
  std::string polyline(const std::vector<cplx>& pts) const {
    std::string s;
    cplx last{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cplx px{f_.px(pts[i].real()), f_.py(pts[i].imag())};
      if (std::abs(px - last) < 0.5 && i + 1 < pts.size()) continue;
      if (!s.empty()) s += ' ';
      s += point(pts[i]);
      last = px;
    }
    return s;
  }

  void axes() {
    emit("<g stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">\n");
    if (view_ == View::klein) {
      emit("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(f_.px(-1)), num(f_.py(0)), num(f_.px(1)), num(f_.py(0)));
      emit("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(f_.px(0)), num(f_.py(-1)), num(f_.px(0)), num(f_.py(1)));
      emit("</g>\n");
      emit("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n", num(f_.px(0)),
           num(f_.py(0)), num(f_.scale()));
      emit("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">Beltrami-Klein disc</text>\n",
           num(kCanvas - kMargin), num(kMargin - 12));
      return;
    }
    const double step = nice_step(f_.x1 - f_.x0);
    for (double t = std::ceil(f_.x0 / step) * step; t <= f_.x1 + 1e-12; t += step) {
      emit("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", num(f_.px(t)), num(kMargin), num(kCanvas - kMargin));
      emit("<text x=\"{}\" y=\"{}\" stroke=\"none\" text-anchor=\"middle\">{}</text>\n", num(f_.px(t)),
           num(kCanvas - kMargin + 16), nice_label(t));
    }
    for (double t = std::ceil(f_.y0 / step) * step; t <= f_.y1 + 1e-12; t += step) {
      emit("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", num(kMargin), num(f_.py(t)), num(kCanvas - kMargin));
      emit("<text x=\"{}\" y=\"{}\" stroke=\"none\" text-anchor=\"end\">{}</text>\n", num(kMargin - 6), num(f_.py(t) + 4),
           nice_label(t));
    }
    emit("</g>\n<g stroke=\"#333333\" stroke-width=\"1.5\">\n");
    if (f_.y0 <= 0.0 && f_.y1 >= 0.0) {
      emit("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", num(kMargin), num(f_.py(0)), num(kCanvas - kMargin));
    }
    if (f_.x0 <= 0.0 && f_.x1 >= 0.0) {
      emit("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", num(f_.px(0)), num(kMargin), num(kCanvas - kMargin));
    }
    emit("</g>\n");
    emit("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\">Re</text>\n", num(kCanvas - kMargin + 8),
         num(kCanvas - kMargin + 4));
    emit("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\">Im</text>\n", num(kMargin - 8),
         num(kMargin - 12));
  }

  // Row runs of cells whose centre satisfies `inside`.
  template <typename Pred>
  void raster(const char* color, Pred inside) {
    emit("<g fill=\"{}\" fill-opacity=\"0.3\" stroke=\"none\" clip-path=\"url(#plot)\">\n", color);
    const int cells = static_cast<int>(kPlot) / kRasterCell;
    for (int row = 0; row < cells; ++row) {
      const double py = kMargin + (row + 0.5) * kRasterCell;
      int start = -1;
      for (int col = 0; col <= cells; ++col) {
        const bool in = col < cells && inside(cplx{f_.data_x(kMargin + (col + 0.5) * kRasterCell), f_.data_y(py)});
        if (in && start < 0) start = col;
        if (!in && start >= 0) {
          emit("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n", num(kMargin + start * kRasterCell),
               num(kMargin + row * kRasterCell), (col - start) * kRasterCell, kRasterCell);
          start = -1;
        }
      }
    }
    emit("</g>\n");
  }

  void region(const Region& r, const char* color) {
    if (view_ == View::klein) return klein_region(r, color);
    const auto& s = r.shape();
    const std::string style = fmt::format("fill=\"{0}\" fill-opacity=\"0.3\" stroke=\"{0}\" stroke-width=\"2\"", color);
    emit("<g clip-path=\"url(#plot)\">\n");
    if (const auto* h = std::get_if<HalfPlane>(&s)) {
      const double edge = std::clamp(f_.px(h->c), kMargin, kCanvas - kMargin);
      const double left = h->sense == HalfPlane::Sense::ge ? edge : kMargin;
      const double right = h->sense == HalfPlane::Sense::ge ? kCanvas - kMargin : edge;
      emit("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"0.3\"/>\n", num(left), num(kMargin),
           num(right - left), num(kPlot), color);
      emit("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"2\"/>\n", num(f_.px(h->c)),
           num(kMargin), num(kCanvas - kMargin), color);
    } else if (const auto* d = std::get_if<Disc>(&s)) {
      emit("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {}/>\n", num(f_.px(d->c)), num(f_.py(0)),
           num(std::max(d->rho * f_.scale(), 3.0)), style);
    } else if (const auto* k = std::get_if<DiscComplement>(&s)) {
      const double cx = f_.px(k->c), cy = f_.py(0), rr = k->rho * f_.scale();
      emit("<path fill-rule=\"evenodd\" d=\"M {0} {0} H {1} V {1} H {0} Z M {2} {3} A {4} {4} 0 1 0 {5} {3} A {4} {4} 0 1 0 {2} {3} Z\" {6}/>\n",
           num(kMargin), num(kCanvas - kMargin), num(cx - rr), num(cy), num(rr), num(cx + rr), style);
    } else if (const auto* c = std::get_if<CircleCurve>(&s)) {
      emit("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", num(f_.px(c->c)),
           num(f_.py(0)), num(std::max(c->rho * f_.scale(), 3.0)), color);
    } else if (const auto* h = std::get_if<HullRegion>(&s)) {
      auto pts = hull_path(h->hull);
      emit("<polygon points=\"{}\" {}/>\n", polyline(pts), style);
      for (auto& z : pts) z = std::conj(z);
      emit("<polygon points=\"{}\" {}/>\n", polyline(pts), style);
    } else if (const auto* cl = std::get_if<CloudRegion>(&s)) {
      cloud(cl->points, color);
    } else if (std::holds_alternative<FullPlane>(s)) {
      emit("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"{2}\" fill-opacity=\"0.3\"/>\n", num(kMargin),
           num(kPlot), color);
    } else if (std::holds_alternative<Intersection>(s)) {
      raster(color, [&](cplx z) { return contains(r, z); });
    }
    emit("</g>\n");
  }

  void klein_region(const Region& r, const char* color) {
    if (const auto* h = r.as<HullRegion>()) {
      const auto& k = h->hull.klein();
      emit("<polygon points=\"{0}\" fill=\"{1}\" fill-opacity=\"0.3\" stroke=\"{1}\" stroke-width=\"2\"/>\n", polyline(k), color);
      return;
    }
    if (const auto* cl = r.as<CloudRegion>()) return cloud(cl->points, color);
    raster(color, [&](cplx w) {
      if (std::abs(w) >= 1.0) return false;
      try {
        return contains(r, bk_inverse(w));
      } catch (const Error&) {
        return false;
      }
    });
  }

  // Points binned to kCloudCell pixels; each occupied cell is one square.
  void cloud(const std::vector<cplx>& pts, const char* color) {
    std::set<std::pair<int, int>> cells;
    auto add = [&](cplx z) {
      const double x = f_.px(z.real()), y = f_.py(z.imag());
      if (!std::isfinite(x) || !std::isfinite(y)) return;
      cells.emplace(static_cast<int>(std::floor(y / kCloudCell)), static_cast<int>(std::floor(x / kCloudCell)));
    };
    for (const auto& z : pts) {
      if (view_ == View::klein) {
        add(bk_map(upper(z)));
      } else {
        add(z);
        add(std::conj(z));
      }
    }
    emit("<g fill=\"{}\" stroke=\"none\" clip-path=\"url(#plot)\">\n", color);
    for (const auto& [row, col] : cells) {
      emit("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n", col * kCloudCell, row * kCloudCell, kCloudCell, kCloudCell);
    }
    emit("</g>\n");
  }

  void locus(std::vector<cplx> pts, const char* color) {
    emit("<g fill=\"none\" stroke=\"{}\" stroke-width=\"2\" clip-path=\"url(#plot)\">\n", color);
    if (view_ == View::klein) {
      for (auto& z : pts) z = bk_map(upper(z));
      emit("<polyline points=\"{}\"/>\n", polyline(pts));
    } else {
      emit("<polyline points=\"{}\"/>\n", polyline(pts));
      for (auto& z : pts) z = std::conj(z);
      emit("<polyline points=\"{}\" stroke-dasharray=\"6 4\"/>\n", polyline(pts));
    }
    emit("</g>\n");
  }

  void legend(const std::vector<std::pair<const char*, std::string>>& entries) {
    const double width = 220.0, height = 10.0 + 18.0 * static_cast<double>(entries.size());
    emit("<g font-family=\"sans-serif\" font-size=\"12\">\n");
    emit("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999999\"/>\n",
         num(kMargin + 8), num(kMargin + 8), num(width), num(height));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const double y = kMargin + 16 + 18.0 * static_cast<double>(i);
      emit("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", num(kMargin + 16), num(y), entries[i].first);
      emit("<text x=\"{}\" y=\"{}\">{}</text>\n", num(kMargin + 34), num(y + 10), escape(entries[i].second));
    }
    emit("</g>\n");
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
      switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
      }
    }
    return out;
  }

  Frame f_;
  View view_;
  std::string out_;
};

Frame euclidean_frame(const Artifacts& a) {
  Extent e;
  e.add(0.0);
  for (const auto& c : a.clouds) {
    for (const auto& z : c.points) e.add(z);
  }
  for (const auto& l : a.loci) {
    for (const auto& z : l.points) e.add(z);
  }
  for (const auto& r : a.regions) add_region(e, r.region);
  const double span = std::max({e.hi - e.lo, 2.0 * e.im, 0.5}) * 1.15;
  const double cx = 0.5 * (e.lo + e.hi);
  return {cx - span / 2, cx + span / 2, -span / 2, span / 2};
}

}  // namespace

std::string render_svg(const Artifacts& a, View view) {
  if (a.empty()) throw InvalidArgument("nothing to render: the artifact list is empty");
  for (const auto& c : a.clouds) {
    if (c.points.empty()) throw InvalidArgument(fmt::format("nothing to render: cloud '{}' is empty", c.label));
  }
  const Frame frame = view == View::klein ? Frame{-1.1, 1.1, -1.1, 1.1} : euclidean_frame(a);
  Canvas canvas(frame, view);
  canvas.axes();
  std::vector<std::pair<const char*, std::string>> legend;
  std::size_t colour = 0;
  auto next = [&] { return kPalette[colour++ % std::size(kPalette)]; };
  for (const auto& r : a.regions) {
    const char* c = next();
    canvas.region(r.region, c);
    legend.emplace_back(c, r.label);
  }
  for (const auto& cl : a.clouds) {
    const char* c = next();
    canvas.cloud(cl.points, c);
    legend.emplace_back(c, fmt::format("{} ({} points)", cl.label, cl.points.size()));
  }
  for (const auto& l : a.loci) {
    const char* c = next();
    canvas.locus(l.points, c);
    legend.emplace_back(c, l.label);
  }
  canvas.legend(legend);
  return canvas.finish();
}

}  // namespace srg::cli
