#include "render.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace meander::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Frame {
  double cx, cy, r;
  int points;

  double x(double position) const { return cx - r + 2 * r * position / (points + 1); }
  double step() const { return 2 * r / (points + 1); }
};

class Svg {
 public:
  Svg(const RenderSpec& spec) : spec_(spec) {
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
            "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
            std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  }

  void raw(const std::string& s) { out_ += s; }

  void arc_path(const std::string& d) {
    out_ += "  <path class=\"arc\" d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
            num(spec_.stroke) + "\"/>\n";
  }

  void dot(double x, double y, double radius) {
    if (!spec_.dots) return;
    out_ += "  <circle class=\"dot\" cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" +
            num(radius) + "\" fill=\"black\"/>\n";
  }

  std::string finish() { return out_ + "</svg>\n"; }

 private:
  const RenderSpec& spec_;
  std::string out_;
};

// Sweep flag for an arc drawn left to right: on screen (y down) the upper
// half is reached clockwise.
int sweep_left_to_right(Side s) { return s == Side::U ? 1 : 0; }

std::string semicircle(const Frame& f, Side side, int lo, int hi, double squash) {
  const double x0 = f.x(lo);
  const double x1 = f.x(hi);
  const double rx = (x1 - x0) / 2;
  return "M " + num(x0) + " " + num(f.cy) + " A " + num(rx) + " " + num(rx * squash) +
         " 0 0 " + std::to_string(sweep_left_to_right(side)) + " " + num(x1) + " " + num(f.cy);
}

struct Point {
  double x, y;
};

// Semicircle over [from, virtual] clipped by the boundary circle, where the
// virtual endpoint lies half a step outside l.
Point boundary_hit(const Frame& f, double from_x, double virtual_x, Side side) {
  const double c = (from_x + virtual_x) / 2;
  const double rad = std::abs(virtual_x - from_x) / 2;
  const double x = (c + f.cx) / 2 + (rad * rad - f.r * f.r) / (2 * (f.cx - c));
  const double h = std::sqrt(std::max(0.0, rad * rad - (x - c) * (x - c)));
  return {x, side == Side::U ? f.cy - h : f.cy + h};
}

}  // namespace

std::string render_svg(const Code& code, const RenderSpec& spec) {
  const bool open = std::holds_alternative<OpenCode>(code);
  const int n = open ? std::get<OpenCode>(code).size() : std::get<ClosedCode>(code).size();
  const auto arcs = open ? arcs_of(std::get<OpenCode>(code)) : arcs_of(std::get<ClosedCode>(code));
  const double margin = 0.06 * std::min(spec.width, spec.height);
  const Frame f{spec.width / 2.0, spec.height / 2.0,
                std::min(spec.width, spec.height) / 2.0 - margin, n};
  const double dot_r = std::max(2.0, spec.stroke * 1.6);

  Svg svg(spec);
  svg.raw("  <circle class=\"boundary\" cx=\"" + num(f.cx) + "\" cy=\"" + num(f.cy) + "\" r=\"" +
          num(f.r) + "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n");
  svg.raw("  <line class=\"axis\" x1=\"" + num(f.cx - f.r) + "\" y1=\"" + num(f.cy) + "\" x2=\"" +
          num(f.cx + f.r) + "\" y2=\"" + num(f.cy) + "\" stroke=\"black\" stroke-width=\"" +
          num(spec.axis_stroke) + "\"/>\n");

  std::map<std::tuple<Side, int, int>, int> seen;
  std::vector<Point> ends;
  for (const auto& a : arcs) {
    if (open && a.lo == 0) {
      const double x0 = f.x(a.hi);
      const Point p = boundary_hit(f, x0, f.x(0) - f.step() / 2, a.side);
      ends.push_back(p);
      svg.arc_path("M " + num(x0) + " " + num(f.cy) + " A " +
                   num((x0 - f.x(0) + f.step() / 2) / 2) + " " +
                   num((x0 - f.x(0) + f.step() / 2) / 2) + " 0 0 " +
                   std::to_string(1 - sweep_left_to_right(a.side)) + " " + num(p.x) + " " +
                   num(p.y));
    } else if (open && a.hi == n + 1) {
      const double x0 = f.x(a.lo);
      const Point p = boundary_hit(f, x0, f.x(n + 1) + f.step() / 2, a.side);
      ends.push_back(p);
      const double rad = (f.x(n + 1) + f.step() / 2 - x0) / 2;
      svg.arc_path("M " + num(x0) + " " + num(f.cy) + " A " + num(rad) + " " + num(rad) +
                   " 0 0 " + std::to_string(sweep_left_to_right(a.side)) + " " + num(p.x) + " " +
                   num(p.y));
    } else {
      // Two arcs can share both endpoints and a side (a closed curve through
      // two points); flatten the inner one so both stay visible.
      const int copies = seen[{a.side, a.lo, a.hi}]++;
      svg.arc_path(semicircle(f, a.side, a.lo, a.hi, copies == 0 ? 1.0 : 0.55));
    }
  }

  for (int i = 1; i <= n; ++i) svg.dot(f.x(i), f.cy, dot_r);
  svg.dot(f.cx - f.r, f.cy, dot_r);
  svg.dot(f.cx + f.r, f.cy, dot_r);
  for (const auto& p : ends) svg.dot(p.x, p.y, dot_r);
  return svg.finish();
}

}  // namespace meander::cli
