#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

namespace planvec {

// Axis-aligned wall rectangle in pixel coordinates, half-open:
// covers x in [x0, x1) and y in [y0, y1).  `fill` is the ink fill ratio
// the fitter observed; it is an annotation and never part of identity.
struct WallRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
  double fill = 0.0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  long long area() const { return static_cast<long long>(width()) * height(); }
  int thickness() const { return width() < height() ? width() : height(); }
  int length() const { return width() < height() ? height() : width(); }

  // Closed-rectangle subset test: true when *this lies inside `outer`,
  // boundary contact (and exact equality) included.
  bool inside(const WallRect& outer) const {
    return outer.x0 <= x0 && x1 <= outer.x1 && outer.y0 <= y0 && y1 <= outer.y1;
  }

  friend bool operator==(const WallRect& a, const WallRect& b) {
    return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
  }
  friend bool operator!=(const WallRect& a, const WallRect& b) { return !(a == b); }
  friend bool operator<(const WallRect& a, const WallRect& b) {
    return std::tie(a.x0, a.y0, a.x1, a.y1) < std::tie(b.x0, b.y0, b.x1, b.y1);
  }
};

// A vectorized floor plan: canvas size plus one rectangle per wall.
struct VectorPlan {
  int canvas_width = 0;
  int canvas_height = 0;
  std::vector<WallRect> walls;
};

}  // namespace planvec
