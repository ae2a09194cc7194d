#include "oriperc/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace oriperc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

struct Canvas {
  double cell;
  double x0, y1;  // lattice bounds; y is flipped so +y points up on screen
  double margin;
  std::string body;

  double px(double x) const { return (x - x0 + margin) * cell; }
  double py(double y) const { return (y1 - y + margin) * cell; }

  void line(double ax, double ay, double bx, double by, const char* style) {
    body += "<line x1=\"" + num(px(ax)) + "\" y1=\"" + num(py(ay)) + "\" x2=\"" + num(px(bx)) +
            "\" y2=\"" + num(py(by)) + "\" " + style + "/>\n";
  }
  void dot(double x, double y, double r, const char* fill) {
    body += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" + num(r) +
            "\" fill=\"" + fill + "\"/>\n";
  }
};

constexpr const char* kArcStyle =
    "stroke=\"#4a4a4a\" stroke-width=\"1.6\" marker-end=\"url(#tip)\"";

// Trim the segment at both ends so site dots and arrowheads stay clear.
void arrow(Canvas& cv, double ax, double ay, double bx, double by, double off_x, double off_y) {
  const double t = 0.18;
  const double sx = ax + (bx - ax) * t + off_x, sy = ay + (by - ay) * t + off_y;
  const double ex = bx - (bx - ax) * t + off_x, ey = by - (by - ay) * t + off_y;
  cv.line(sx, sy, ex, ey, kArcStyle);
}

std::string finish(Canvas& cv, double x1_minus_x0, double y1_minus_y0,
                   const RenderOptions& opt) {
  const double w = (x1_minus_x0 + 2 * cv.margin) * cv.cell;
  const double h = (y1_minus_y0 + 2 * cv.margin) * cv.cell;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) +
                    "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) +
                    "\">\n<defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
                    "markerWidth=\"5\" markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0 L10,5 "
                    "L0,10 z\" fill=\"#4a4a4a\"/></marker></defs>\n"
                    "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += cv.body;
  if (!opt.highlight.empty()) {
    std::string pts;
    for (const auto& [hx, hy] : opt.highlight) {
      if (!pts.empty()) pts += ' ';
      pts += num(cv.px(hx)) + "," + num(cv.py(hy));
    }
    out += "<polyline points=\"" + pts +
           "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3.5\" stroke-opacity=\"0.8\" "
           "stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

template <typename DrawArcs>
std::string render_window(const RegionGeometry& g, const RenderOptions& opt, DrawArcs&& draw) {
  double x0 = std::numeric_limits<double>::max(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Site& s : g.sites()) {
    if (s.z != 0) continue;
    x0 = std::min(x0, double(s.x));
    x1 = std::max(x1, double(s.x));
    y0 = std::min(y0, double(s.y));
    y1 = std::max(y1, double(s.y));
  }
  Canvas cv{opt.cell, x0, y1, 0.75, {}};
  draw(cv);
  for (const Site& s : g.sites()) {
    if (s.z != 0) continue;
    const bool origin = s.x == 0 && s.y == 0;
    cv.dot(s.x, s.y, origin ? 4.5 : 2.5, origin ? "#d62728" : "#1f3b5c");
  }
  return finish(cv, x1 - x0, y1 - y0, opt);
}

bool in_middle_plane(const Edge& e) { return e.tail.z == 0 && e.axis != Axis::Z; }

}  // namespace

std::string render_svg(const Config& c, const RenderOptions& opt) {
  const auto& g = c.geometry();
  return render_window(g, opt, [&](Canvas& cv) {
    for (size_t i = 0; i < g.edges().size(); ++i) {
      const Edge& e = g.edges()[i];
      if (!in_middle_plane(e)) continue;
      const Site a = e.tail, b = e.head();
      if (c.forward(static_cast<int>(i)))
        arrow(cv, a.x, a.y, b.x, b.y, 0, 0);
      else
        arrow(cv, b.x, b.y, a.x, a.y, 0, 0);
    }
  });
}

std::string render_svg(const ArcSet& s, const RenderOptions& opt) {
  const auto& g = s.geometry();
  return render_window(g, opt, [&](Canvas& cv) {
    for (size_t i = 0; i < g.edges().size(); ++i) {
      const Edge& e = g.edges()[i];
      if (!in_middle_plane(e)) continue;
      const Site a = e.tail, b = e.head();
      const bool fwd = s.has(static_cast<int>(i), true), bwd = s.has(static_cast<int>(i), false);
      // sideways offset separates antiparallel arrows
      const double k = (fwd && bwd) ? 0.07 : 0.0;
      const double ox = (e.axis == Axis::Y) ? k : 0.0;
      const double oy = (e.axis == Axis::X) ? k : 0.0;
      if (fwd) arrow(cv, a.x, a.y, b.x, b.y, ox, oy);
      if (bwd) arrow(cv, b.x, b.y, a.x, a.y, -ox, -oy);
    }
  });
}

}  // namespace oriperc
