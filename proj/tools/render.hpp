#pragma once

#include <string>

#include "meander/core.hpp"

namespace meander::cli {

struct RenderSpec {
  int width = 480;
  int height = 480;
  double stroke = 2.0;       // curve m
  double axis_stroke = 1.5;  // line l
  bool dots = true;
};

// l is the horizontal diameter of the boundary circle, intersections sit at
// x = i/(N+1) along it and every arc of m is a semicircle over its span.
// The two boundary rays of an open code are arcs over a span that reaches
// half a step past the end of l, clipped at the circle.
std::string render_svg(const Code& code, const RenderSpec& spec = {});

}  // namespace meander::cli
