#include "planvec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "planvec/postprocess.hpp"
#include "planvec/sat.hpp"
#include "planvec/snap.hpp"

namespace planvec {

PipelineParams default_params(int image_width) {
  if (image_width <= 0)
    throw std::invalid_argument("default_params: image width must be positive");
  const double s = image_width / 1024.0;
  PipelineParams p;
  p.corners.min_distance = std::max(1.0, 8.0 * s);
  p.snap_tolerance = std::max(1.0, 6.0 * s);
  p.fit.min_thickness = std::max(1, static_cast<int>(std::lround(3.0 * s)));
  p.fit.max_thickness =
      std::max(p.fit.min_thickness, static_cast<int>(std::lround(40.0 * s)));
  p.fit.min_length = std::max(2, static_cast<int>(std::lround(12.0 * s)));
  return p;
}

namespace {

struct Refined {
  int coord = 0;
  int score = 0;
};

// Ink density of the half-open box [x0,x1) x [y0,y1) clamped to the image;
// pixels outside the image count as background.
double box_density(const BinaryImage& img, int x0, int y0, int x1, int y1) {
  x0 = std::max(0, x0);
  y0 = std::max(0, y0);
  x1 = std::min(img.width, x1);
  y1 = std::min(img.height, y1);
  if (x0 >= x1 || y0 >= y1) return 0.0;
  int ink = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) ink += img.ink(x, y) ? 1 : 0;
  return static_cast<double>(ink) / ((x1 - x0) * (y1 - y0));
}

// Structural corner test: around a genuine rectilinear corner, the four
// r x r quadrants are each decisively ink or decisively background, and
// exactly 1 (convex) or 3 (concave) of them are ink.  A point on a straight
// edge shows 2 ink quadrants, an isolated speck 0, wall interior 4 — all
// rejected.  The decisive thresholds reject boundary-noise bumps, whose
// quadrants sit near half density, with high margin.
struct QuadrantPattern {
  bool corner = false;  // decisively a rectilinear corner
  bool ink[4] = {false, false, false, false};  // NW, NE, SW, SE
};

QuadrantPattern quadrant_pattern(const BinaryImage& img, int bx, int by,
                                 int r) {
  QuadrantPattern pat;
  int inky = 0;
  const int qx[4] = {bx - r, bx, bx - r, bx};
  const int qy[4] = {by - r, by - r, by, by};
  for (int q = 0; q < 4; ++q) {
    const double d = box_density(img, qx[q], qy[q], qx[q] + r, qy[q] + r);
    if (d >= 0.65) {
      pat.ink[q] = true;
      ++inky;
    } else if (d > 0.35) {
      return pat;  // ambiguous quadrant: not a clean corner
    }
  }
  pat.corner = (inky == 1 || inky == 3);
  return pat;
}

// Subpixel edge position across the pre-located boundary b0: the centroid of
// absolute differences between adjacent column (or row) ink counts, sampled
// over an h-deep strip on one side of the corner's cross coordinate.  Noise
// spreads a sharp edge symmetrically over neighboring columns; the centroid
// recovers the center, where the integer transition argmax wanders +-1.
double edge_centroid(const BinaryImage& img, int b0, int cross0, bool x_axis,
                     bool positive_side, int h) {
  const int limit = x_axis ? img.width : img.height;
  const int cross_limit = x_axis ? img.height : img.width;
  const int c0 = std::max(0, positive_side ? cross0 : cross0 - h);
  const int c1 = std::min(cross_limit, positive_side ? cross0 + h : cross0);
  if (c0 >= c1) return b0;
  const auto count = [&](int b) {
    if (b < 0 || b >= limit) return 0;
    int n = 0;
    for (int c = c0; c < c1; ++c)
      n += (x_axis ? img.ink(b, c) : img.ink(c, b)) ? 1 : 0;
    return n;
  };
  const int lo = std::max(1, b0 - 2);
  const int hi = std::min(limit - 1, b0 + 2);
  double num = 0.0, den = 0.0;
  int prev = count(lo - 1);
  for (int b = lo; b <= hi; ++b) {
    const int cur = count(b);
    const int g = std::abs(cur - prev);
    num += static_cast<double>(b) * g;
    den += g;
    prev = cur;
  }
  return den > 0.0 ? num / den : static_cast<double>(b0);
}

// Strongest boundary along one axis near `p`: boundary b (between column or
// row b-1 and b) maximizing the number of ink transitions across it in a
// 5-sample strip; ties prefer the boundary nearest the peak, then the
// smaller coordinate.
Refined best_boundary(const BinaryImage& img, int p, int cross, bool x_axis) {
  const int limit = x_axis ? img.width : img.height;
  const int cross_limit = x_axis ? img.height : img.width;
  const int c0 = std::max(0, cross - 2);
  const int c1 = std::min(cross_limit - 1, cross + 2);
  Refined best;
  double best_dist = 0.0;
  for (int b = std::max(1, p - 2); b <= std::min(limit - 1, p + 3); ++b) {
    int score = 0;
    for (int c = c0; c <= c1; ++c) {
      const bool hi = x_axis ? img.ink(b, c) : img.ink(c, b);
      const bool lo = x_axis ? img.ink(b - 1, c) : img.ink(c, b - 1);
      if (hi != lo) ++score;
    }
    const double dist = std::abs(b - (p + 0.5));
    if (score > best.score ||
        (score == best.score && score > 0 && dist < best_dist)) {
      best = {b, score};
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace

std::vector<CornerPoint> refine_corners(const std::vector<CornerPoint>& corners,
                                        const BinaryImage& binary,
                                        int corner_radius) {
  const int r = std::max(1, corner_radius);
  std::vector<CornerPoint> out;
  out.reserve(corners.size());
  for (const CornerPoint& c : corners) {
    const int px = static_cast<int>(std::lround(c.x));
    const int py = static_cast<int>(std::lround(c.y));
    const Refined rx = best_boundary(binary, px, py, true);
    const Refined ry = best_boundary(binary, py, px, false);
    if (rx.score < 1 || ry.score < 1) continue;
    const QuadrantPattern pat =
        quadrant_pattern(binary, rx.coord, ry.coord, r);
    if (!pat.corner) continue;
    // The vertical edge through this corner exists on the side of ry where
    // the left/right quadrants disagree (exactly one side for a 1- or
    // 3-ink pattern); likewise the horizontal edge across rx.
    const bool x_below = pat.ink[2] != pat.ink[3];  // SW vs SE
    const bool y_right = pat.ink[1] != pat.ink[3];  // NE vs SE
    const double fx =
        edge_centroid(binary, rx.coord, ry.coord, true, x_below, r);
    const double fy =
        edge_centroid(binary, ry.coord, rx.coord, false, y_right, r);
    out.push_back({fx, fy, c.response});
  }
  return out;
}

VectorizeResult vectorize_image(const RasterImage& input,
                                const PipelineParams& params) {
  const RasterImage gray = to_grayscale(input);
  const BinaryImage binary = binarize(gray, params.threshold);

  VectorizeResult result;
  result.plan.canvas_width = input.width;
  result.plan.canvas_height = input.height;

  const RasterImage detect_src =
      params.corners_on_grayscale ? gray : binary_to_gray(binary);
  result.corners = detect_corners(detect_src, params.corners);
  if (result.corners.empty()) return result;

  const int corner_radius =
      std::max(2, static_cast<int>(std::lround(params.corners.min_distance)));
  const std::vector<CornerPoint> refined =
      refine_corners(result.corners, binary, corner_radius);
  auto [grid, snapped] = snap_corners(refined, params.snap_tolerance);
  (void)snapped;
  if (grid.xs.size() < 2 || grid.ys.size() < 2) return result;

  const std::vector<WallRect> candidates =
      enumerate_candidates(grid, params.fit, input.width, input.height);
  const SummedAreaTable sat(binary);
  result.plan.walls = select_walls(candidates, binary, sat, params.fit);
  if (params.run_postprocess) result.plan = postprocess(std::move(result.plan));
  return result;
}

}  // namespace planvec
