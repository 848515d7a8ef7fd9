#pragma once

#include <vector>

#include "planvec/corners.hpp"
#include "planvec/geometry.hpp"
#include "planvec/image.hpp"
#include "planvec/wallfit.hpp"

namespace planvec {

// Fully resolved knobs for one vectorization run.  default_params scales
// the resolution-dependent values from their 1024-px reference defaults.
struct PipelineParams {
  int threshold = 128;
  CornerParams corners;
  double snap_tolerance = 6.0;
  FitParams fit;
  bool run_postprocess = true;
  // Detect corners on the raw grayscale instead of the thresholded view.
  bool corners_on_grayscale = false;
};

PipelineParams default_params(int image_width);

// Snaps each detected peak to the strongest ink boundary within a small
// search window (peaks sit on extreme pixels, which is off by one against
// half-open rectangle coordinates) and keeps only structural corners: the
// four radius x radius quadrants around the snapped point must each be
// decisively ink or decisively background, with exactly 1 (convex) or 3
// (concave/T) of them ink.  Straight-edge points (2 ink quadrants), wall
// interiors (4), isolated specks (0), and noise bumps (ambiguous density)
// are all rejected.  Survivors carry subpixel boundary coordinates from an
// edge-difference centroid, exact integers on clean input.  The radius
// should stay at or below the wall thickness.
std::vector<CornerPoint> refine_corners(const std::vector<CornerPoint>& corners,
                                        const BinaryImage& binary,
                                        int corner_radius = 2);

struct VectorizeResult {
  VectorPlan plan;
  std::vector<CornerPoint> corners;  // raw detector output, for debug dumps
};

// The full raster -> plan pipeline: grayscale, threshold, corner peaks,
// boundary refinement, axis snapping, candidate enumeration over the grid,
// greedy fill/gain selection, then containment/merge cleanup.
VectorizeResult vectorize_image(const RasterImage& input,
                                const PipelineParams& params);

}  // namespace planvec
